#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace frauddet {

/// Objective callback: writes the gradient at x into grad and returns f(x).
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
    std::size_t history = 10;
    std::size_t max_iterations = 200;
    double gradient_tolerance = 1e-6;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
};

struct LbfgsResult {
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Strong-Wolfe line search (bracket then zoom by bisection/interpolation).
/// Returns the accepted step and leaves x_new, grad_new, value_new filled.
inline bool wolfe_line_search(const ObjectiveFn& f, std::span<const double> x,
                              std::span<const double> direction, double f0, double g0,
                              const LbfgsOptions& opt, std::vector<double>& x_new,
                              std::vector<double>& grad_new, double& value_new,
                              double& step_out) {
    const std::size_t n = x.size();
    auto eval = [&](double step) {
        for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * direction[i];
        value_new = f(x_new, grad_new);
        if (!std::isfinite(value_new))
            throw std::runtime_error("lbfgs: non-finite objective during line search");
        return dot(grad_new, direction);
    };

    double lo = 0.0, hi = 0.0;
    double f_lo = f0;
    double step = 1.0;
    double prev_step = 0.0, prev_value = f0;
    bool bracketed = false;

    for (int iter = 0; iter < 25 && !bracketed; ++iter) {
        const double g = eval(step);
        if (value_new > f0 + opt.wolfe_c1 * step * g0 || (iter > 0 && value_new >= prev_value)) {
            lo = prev_step;
            f_lo = prev_value;
            hi = step;
            bracketed = true;
            break;
        }
        if (std::abs(g) <= -opt.wolfe_c2 * g0) {
            step_out = step;
            return true;  // strong Wolfe holds
        }
        if (g >= 0.0) {
            lo = step;
            f_lo = value_new;
            hi = prev_step;
            bracketed = true;
            break;
        }
        prev_step = step;
        prev_value = value_new;
        step *= 2.0;
    }
    if (!bracketed) {
        step_out = step;
        return false;
    }

    for (int iter = 0; iter < 40; ++iter) {
        step = 0.5 * (lo + hi);
        const double g = eval(step);
        if (value_new > f0 + opt.wolfe_c1 * step * g0 || value_new >= f_lo) {
            hi = step;
        } else {
            if (std::abs(g) <= -opt.wolfe_c2 * g0) {
                step_out = step;
                return true;
            }
            if (g * (hi - lo) >= 0.0) hi = lo;
            lo = step;
            f_lo = value_new;
        }
        if (std::abs(hi - lo) < 1e-14) break;
    }
    // Fall back to the last sufficient-decrease point.
    step_out = step;
    eval(step);
    return value_new <= f0 + opt.wolfe_c1 * step * g0;
}

}  // namespace detail

/// Minimizes f starting from x (updated in place) with limited-memory BFGS.
inline LbfgsResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double>& x,
                                  const LbfgsOptions& opt = {}) {
    const std::size_t n = x.size();
    std::vector<double> grad(n), x_new(n), grad_new(n), direction(n);
    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    double value = f(x, grad);
    if (!std::isfinite(value)) throw std::runtime_error("lbfgs: non-finite initial objective");

    LbfgsResult result;
    result.value = value;
    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
        if (detail::max_abs(grad) <= opt.gradient_tolerance) {
            result.converged = true;
            break;
        }

        // Two-loop recursion for the search direction.
        direction.assign(grad.begin(), grad.end());
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * detail::dot(s_hist[i], direction);
            for (std::size_t j = 0; j < n; ++j) direction[j] -= alpha[i] * y_hist[i][j];
        }
        if (!s_hist.empty()) {
            const double gamma = detail::dot(s_hist.back(), y_hist.back()) /
                                 detail::dot(y_hist.back(), y_hist.back());
            for (double& d : direction) d *= gamma;
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * detail::dot(y_hist[i], direction);
            for (std::size_t j = 0; j < n; ++j)
                direction[j] += (alpha[i] - beta) * s_hist[i][j];
        }
        for (double& d : direction) d = -d;

        double g0 = detail::dot(grad, direction);
        if (g0 >= 0.0) {  // not a descent direction; restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
            g0 = detail::dot(grad, direction);
            if (g0 >= 0.0) break;  // zero gradient
        }

        double step = 0.0;
        double value_new = value;
        const bool ok = detail::wolfe_line_search(f, x, direction, value, g0, opt, x_new,
                                                  grad_new, value_new, step);
        if (!ok && value_new >= value) break;  // no progress possible

        std::vector<double> s(n), y(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = x_new[j] - x[j];
            y[j] = grad_new[j] - grad[j];
        }
        const double sy = detail::dot(s, y);
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > opt.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = x_new;
        grad = grad_new;
        value = value_new;
        result.iterations = iter + 1;
        result.value = value;
    }
    return result;
}

}  // namespace frauddet
