#include <doctest.h>

#include <stdexcept>

#include "fiberqed/basis.hpp"

using namespace fiberqed;

TEST_CASE("sector sizes match the truncated-model counts for any N") {
    for (int n : {1, 2, 7}) {
        SystemConfig cfg;
        cfg.N1 = cfg.N2 = n;

        cfg.model = Model::Full;
        CHECK(enumerate_basis(cfg, 0).size() == 1);
        CHECK(enumerate_basis(cfg, 1).size() == 5);
        CHECK(enumerate_basis(cfg, 2).size() == 13);

        cfg.model = Model::Reduced;
        CHECK(enumerate_basis(cfg, 0).size() == 1);
        CHECK(enumerate_basis(cfg, 1).size() == 3);
        CHECK(enumerate_basis(cfg, 2).size() == 4);
    }
}

TEST_CASE("single-excitation ordering: atoms-2, atoms-1, then field modes") {
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = 3;
    const Subspace full = enumerate_basis(cfg, 1);
    REQUIRE(full.size() == 5);
    CHECK(full.states[0] == BasisState{Model::Full, {0, 0, 0}, 0, 1});
    CHECK(full.states[1] == BasisState{Model::Full, {0, 0, 0}, 1, 0});
    CHECK(full.states[2] == BasisState{Model::Full, {0, 0, 1}, 0, 0});
    CHECK(full.states[3] == BasisState{Model::Full, {0, 1, 0}, 0, 0});
    CHECK(full.states[4] == BasisState{Model::Full, {1, 0, 0}, 0, 0});

    cfg.model = Model::Reduced;
    const Subspace red = enumerate_basis(cfg, 1);
    REQUIRE(red.size() == 3);
    CHECK(red.states[0] == BasisState{Model::Reduced, {0, 0, 0}, 0, 1});
    CHECK(red.states[1] == BasisState{Model::Reduced, {0, 0, 0}, 1, 0});
    CHECK(red.states[2] == BasisState{Model::Reduced, {1, 0, 0}, 0, 0});
}

TEST_CASE("reduced two-excitation ordering keeps the doubly excited pair first") {
    SystemConfig cfg;
    cfg.model = Model::Reduced;
    const Subspace sub = enumerate_basis(cfg, 2);
    REQUIRE(sub.size() == 4);
    CHECK(sub.states[0] == BasisState{Model::Reduced, {0, 0, 0}, 1, 1});
    CHECK(sub.states[1] == BasisState{Model::Reduced, {1, 0, 0}, 0, 1});
    CHECK(sub.states[2] == BasisState{Model::Reduced, {1, 0, 0}, 1, 0});
    CHECK(sub.states[3] == BasisState{Model::Reduced, {2, 0, 0}, 0, 0});
}

TEST_CASE("every member of a sector carries the sector's excitation number") {
    for (Model model : {Model::Full, Model::Reduced}) {
        SystemConfig cfg;
        cfg.model = model;
        cfg.N1 = cfg.N2 = 2;
        for (int exc : {0, 1, 2}) {
            const Subspace sub = enumerate_basis(cfg, exc);
            for (const auto& s : sub.states) CHECK(conserved_excitation(s) == exc);
        }
    }
}

TEST_CASE("conserved excitation of explicit labels") {
    CHECK(conserved_excitation(BasisState{Model::Full, {0, 0, 0}, 1, 0}) == 1);
    CHECK(conserved_excitation(BasisState{Model::Full, {0, 0, 0}, 0, 0}) == 0);
    CHECK(conserved_excitation(BasisState{Model::Reduced, {2, 0, 0}, 0, 0}) == 2);
    CHECK(conserved_excitation(BasisState{Model::Full, {1, 1, 0}, 1, 1}) == 4);
}

TEST_CASE("enumeration is deterministic and index_of is its inverse") {
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = 2;
    const Subspace a = enumerate_basis(cfg, 2);
    const Subspace b = enumerate_basis(cfg, 2);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.states[i] == b.states[i]);
        CHECK(a.index_of(a.states[i]) == i);
    }
    CHECK(a.index_of(BasisState{Model::Full, {2, 2, 2}, 0, 0}) == -1);
}

TEST_CASE("blockade off re-admits doubly excited ensembles where N allows") {
    SystemConfig cfg;
    cfg.model = Model::Reduced;
    cfg.blockade = false;
    cfg.N1 = cfg.N2 = 2;
    CHECK(enumerate_basis(cfg, 2).size() == 6);
    cfg.N1 = cfg.N2 = 1;  // one atom has no m=2 state
    CHECK(enumerate_basis(cfg, 2).size() == 4);
}

TEST_CASE("configuration and sector validation errors") {
    SystemConfig cfg;
    CHECK_THROWS_AS(enumerate_basis(cfg, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_basis(cfg, -1), std::invalid_argument);

    SystemConfig bad = cfg;
    bad.N1 = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.kappa = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.g1 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("the coupling ratio is derived, never stored") {
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = 4;
    cfg.g1 = 0.5;
    cfg.nu = 2.0;
    CHECK(cfg.ratio_r() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cfg.delta() == doctest::Approx(cfg.g2 - cfg.g1));
}
