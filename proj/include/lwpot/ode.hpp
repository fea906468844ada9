#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>

#include "lwpot/types.hpp"

namespace lwpot::ode {

struct Options {
    double rtol = 1e-12;
    double atol = 1e-16;
    double h_init = 0.0;  // 0 = automatic
    long max_steps = 4'000'000;
};

/// Adaptive embedded Runge-Kutta pair (Dormand-Prince 5(4)) for small
/// fixed-size systems.  Integrates dy/dt = f(t, y) from t0 to t1; t1 < t0
/// integrates backwards.  The observer, when given, is called at every
/// point of `out_ts` (which must be ordered in the direction of travel);
/// steps are clamped so sample points are hit exactly.
template <std::size_t N>
class RungeKutta {
  public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    static State integrate(const Rhs& f, double t0, double t1, State y,
                           const Options& opt = {},
                           std::span<const double> out_ts = {},
                           const std::function<void(double, const State&)>& observer = nullptr) {
        const double dir = (t1 >= t0) ? 1.0 : -1.0;
        double t = t0;
        double h = opt.h_init != 0.0 ? std::abs(opt.h_init) : initial_step(f, t0, y, dir, opt);
        std::size_t next_out = 0;

        // emit samples coincident with the start point
        while (observer && next_out < out_ts.size() && dir * (out_ts[next_out] - t) <= 0.0) {
            observer(out_ts[next_out], y);
            ++next_out;
        }

        long steps = 0;
        while (dir * (t1 - t) > 0.0) {
            if (++steps > opt.max_steps)
                throw NumericalError("ode: step budget exhausted");
            double span = dir * (t1 - t);
            h = std::min(h, span);
            if (observer && next_out < out_ts.size())
                h = std::min(h, dir * (out_ts[next_out] - t));
            if (!(h > std::abs(t) * 1e-305 + 1e-305) || t + dir * h == t)
                throw NumericalError("ode: step size underflow");

            State y_new, err;
            step(f, t, y, dir * h, y_new, err);

            double err_norm = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err_norm = std::max(err_norm, std::abs(err[i]) / sc);
            }

            if (err_norm <= 1.0) {
                t += dir * h;
                y = y_new;
                while (observer && next_out < out_ts.size() &&
                       dir * (out_ts[next_out] - t) <= std::abs(t) * 1e-14 + 1e-300) {
                    observer(out_ts[next_out], y);
                    ++next_out;
                }
            }
            double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        }
        while (observer && next_out < out_ts.size()) {  // samples at the far endpoint
            observer(out_ts[next_out], y);
            ++next_out;
        }
        return y;
    }

  private:
    static double initial_step(const Rhs& f, double t0, const State& y, double dir,
                               const Options& opt) {
        State dy;
        f(t0, y, dy);
        double ynorm = 0.0, dnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            ynorm = std::max(ynorm, std::abs(y[i]));
            dnorm = std::max(dnorm, std::abs(dy[i]));
        }
        double h = (dnorm > 0.0) ? 0.01 * (ynorm + opt.atol) / dnorm : 1e-6;
        (void)dir;
        return std::max(h, 1e-12);
    }

    static void step(const Rhs& f, double t, const State& y, double h, State& out, State& err) {
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
        static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                                e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                                e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        State k1, k2, k3, k4, k5, k6, k7, tmp;
        f(t, y, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, tmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, out, k7);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

};

using RK2 = RungeKutta<2>;

}  // namespace lwpot::ode
