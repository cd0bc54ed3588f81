#pragma once

#include <cmath>
#include <cstddef>

#include "arhyst/errors.hpp"

// Independent numerical-integration oracles for the defining integrals behind
// the closed forms: the strong-signal term K0, the leading hysteresis
// correction E0, and the second-order correction E1 (which has no elementary
// closed form; only its second alpha-derivative at 0 does). These exist to
// validate closed_forms and deliberately share no code path with it.

namespace arhyst {

struct QuadConfig {
    double abs_tol = 1e-10;        // absolute tolerance per integral
    double domain_radius = 10.0;   // Gaussian domain truncation (mass < 1e-23 outside)
    std::size_t max_subdivisions = 2000000;  // subdivision budget per top-level integral
};

namespace detail {

constexpr int kSimpsonMinDepth = 6;  // forces 64 panels before accepting (guards
                                     // near-odd integrands whose first error
                                     // estimates vanish by symmetry)
constexpr int kSimpsonMaxDepth = 48;

template <class F>
double simpson_rec(F& fn, double a, double fa, double m, double fm, double b, double fb,
                   double whole, double tol, std::size_t& budget, int depth) {
    if (budget == 0) throw ConvergenceError("adaptive_simpson: subdivision budget exhausted");
    --budget;
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kSimpsonMinDepth && std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth >= kSimpsonMaxDepth) throw ConvergenceError("adaptive_simpson: max depth reached");
    return simpson_rec(fn, a, fa, lm, flm, m, fm, left, 0.5 * tol, budget, depth + 1) +
           simpson_rec(fn, m, fm, rm, frm, b, fb, right, 0.5 * tol, budget, depth + 1);
}

template <class F>
double integrate(F& fn, double a, double b, double tol, std::size_t& budget) {
    if (!(b > a)) return 0.0;  // empty region
    const double m = 0.5 * (a + b);
    const double fa = fn(a);
    const double fm = fn(m);
    const double fb = fn(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(fn, a, fa, m, fm, b, fb, whole, tol, budget, 0);
}

}  // namespace detail

// Adaptive Simpson integration of fn over [a, b] to absolute tolerance
// abs_tol. Throws ConvergenceError when the subdivision budget runs out
// before the tolerance is met. Empty intervals integrate to zero.
template <class F>
double adaptive_simpson(F&& fn, double a, double b, double abs_tol,
                        std::size_t max_subdivisions = 2000000) {
    std::size_t budget = max_subdivisions;
    return detail::integrate(fn, a, b, abs_tol, budget);
}

// 2D quadrature of 2 rho x f(x) f(z) over { sqrt(1-a^2) x + a z >= eta }.
double K0_numeric(double alpha, double eta, double rho, const QuadConfig& cfg = {});

// 2D quadrature of 2 rho x f(x) f(z) over z >= eta and sqrt(1-a^2) x + a z
// inside [-eta, eta) (the strip where the position is still held). alpha > 0.
double E0_numeric(double alpha, double eta, double rho, const QuadConfig& cfg = {});

// Second-order correction term: the defining triple integral with the inner
// x-integral done analytically (antiderivative of x e^{-x^2/2}), leaving a 2D
// quadrature over the held-twice region. alpha > 0; result <= 0.
double E1_numeric(double alpha, double eta, double rho, const QuadConfig& cfg = {});

// Series truncation K0 + E0 + E1 (remainder O(alpha^3)); alpha in [0, 0.5].
double K_truncated(double alpha, double eta, double rho, const QuadConfig& cfg = {});

}  // namespace arhyst
