#pragma once

#include "arhyst/errors.hpp"

// Closed-form quantities of the model: the strong-signal correlation term K0,
// the leading hysteresis correction E0, K and its derivatives on the alpha = 0
// axis, the expected survival time H and its derivatives there, the Lagrange
// multiplier of the constrained problem, the curvature of H along the
// constraint curve, and the improvement ratio R.
//
// Every formula is written in terms of f(eta) and F(-eta) (pdf and lower-tail
// cdf), so no 1 - F(eta) cancellation occurs for large eta. Formulas that
// divide by F(-eta) require eta <= 8; beyond that the tail underflows and an
// UnsupportedRegionError is thrown instead of returning garbage.

namespace arhyst {

struct GradPair {
    double d_alpha;
    double d_eta;
};

struct HessTriple {
    double d_aa;
    double d_ae;
    double d_ee;
};

// Verification summary at a point (alpha = 0, eta0) on the constraint curve
// K = c. collinearity_residual is the normalized 2x2 determinant of
// (grad_H, grad_K); constrained_second_derivative is the second derivative of
// H along the curve (negative at a constrained local maximum).
struct OptimalityReport {
    double eta0;
    double c;
    GradPair grad_K;
    GradPair grad_H;
    double lambda;
    double collinearity_residual;
    double constrained_second_derivative;

    bool passes() const {
        return collinearity_residual <= 1e-10 && constrained_second_derivative < 0.0;
    }
};

// K0(alpha,eta,rho) = (2 rho / sqrt(2 pi)) e^{-eta^2/2} sqrt(1-alpha^2).
double K0(double alpha, double eta, double rho);

// E0 = K0 * (F(sqrt((1-a)/(1+a)) eta) - F(sqrt((1+a)/(1-a)) eta)); always <= 0.
double E0(double alpha, double eta, double rho);

// K on the alpha = 0 axis: K(0,eta) = 2 rho f(eta).
double K_axis(double eta, double rho);

// Gradient and Hessian of K at (0, eta).
GradPair grad_K_at0(double eta, double rho);
HessTriple hess_K_at0(double eta, double rho);

// Conditional expected survival time h(x) at alpha = 0 and its partials.
double h_at0(double eta);                       // 1 / F(-eta), independent of x
double dh_dalpha_at0(double eta, double x);     // f(-eta)^2/F(-eta)^2 + x f(-eta)/F(-eta)
double dh_deta_at0(double eta);                 // f(-eta) / F(-eta)^2

// int_eta^inf (d2h/dalpha2)(0,eta,x) f(x) dx, in closed form.
double d2h_dalpha2_integral_at0(double eta);

// Expected survival time started above the threshold and its derivatives at
// alpha = 0.
double H_at0(double eta);
GradPair grad_H_at0(double eta);
HessTriple hess_H_at0(double eta);

// Multiplier in grad_H = lambda grad_K at (0, eta): -1/(2 rho eta F(-eta)^2).
// Undefined at eta = 0 (both gradients of K vanish).
double lagrange_lambda(double eta, double rho);

// Second derivative of H along the constraint curve at (0, eta), assembled as
// D2H(v,v) - lambda * D2K(v,v) with tangent v = (1/(2 f(eta)), -1). The value
// is independent of rho (lambda carries 1/rho, D2K carries rho).
double constrained_second_derivative(double eta, double rho);

// Same quantity as one simplified expression in f(eta), F(-eta) only; used to
// cross-check the assembled route against transcription errors.
double constrained_second_derivative_closed(double eta);

// Relative gain in K from removing smoothing at fixed eta:
// R = (1 - s(1 + a - b)) / (s(1 + a - b)) with s = sqrt(1-alpha^2),
// a = F(sqrt((1-alpha)/(1+alpha)) eta), b = F(sqrt((1+alpha)/(1-alpha)) eta).
// Equals (K_axis - (K0+E0)) / (K0+E0); zero iff alpha = 0.
double improvement_ratio(double alpha, double eta);

}  // namespace arhyst
