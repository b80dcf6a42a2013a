#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fiberqed {

struct OdeOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    double min_step = 1e-12;
    double max_step = 0.25;
};

// Adaptive Dormand-Prince 5(4) step on a complex state vector.
// f(t, y, dydt) fills dydt. Advances y in place from t0 to t1 (t1 > t0).
// Throws std::runtime_error if the error controller drives the step below
// min_step; a failed tolerance is never silently accepted.
template <class F>
void integrate_adaptive(F&& f, double t0, double t1, Eigen::VectorXcd& y,
                        const OdeOptions& opt = {}) {
    if (t1 <= t0) {
        if (t1 == t0) return;
        throw std::invalid_argument("integrate_adaptive: t1 < t0");
    }

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 5th-order minus embedded 4th-order weights.
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const auto n = y.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    double t = t0;
    double h = std::min(opt.initial_step, t1 - t0);
    f(t, y, k1);  // FSAL

    while (t < t1) {
        h = std::min(h, t1 - t);

        ytmp = y + h * a21 * k1;
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);

        // Scaled RMS error estimate.
        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::complex<double> de =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = std::abs(de) / scale;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);
        }

        const double factor =
            (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
        h = std::min(h, opt.max_step);
        if (h < opt.min_step)
            throw std::runtime_error("integrate_adaptive: step size underflow at t=" +
                                     std::to_string(t));
    }
}

}  // namespace fiberqed
