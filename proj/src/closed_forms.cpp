#include "arhyst/closed_forms.hpp"

#include <cmath>

#include "arhyst/gaussian.hpp"

namespace arhyst {

namespace {

constexpr double kTwoOverSqrt2Pi = 0.79788456080286535587989211986876;  // 2/sqrt(2 pi)
constexpr double kPi = 3.14159265358979323846264338327950;

void require_eta(double eta, double cap = 8.0) {
    if (!(std::isfinite(eta) && eta >= 0.0)) throw ParamError("eta must be >= 0");
    if (eta > cap)
        throw UnsupportedRegionError("eta too large for a well-conditioned evaluation (cap " +
                                     std::to_string(cap) + ")");
}

void require_alpha(double alpha) {
    if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.99))
        throw ParamError("alpha must lie in [0, 0.99]");
}

void require_rho(double rho) {
    if (!(std::isfinite(rho) && rho > 0.0 && rho < 1.0)) throw ParamError("rho must lie in (0,1)");
}

}  // namespace

double K0(double alpha, double eta, double rho) {
    require_alpha(alpha);
    require_eta(eta, 40.0);
    require_rho(rho);
    // 2 rho f(eta) sqrt(1-alpha^2); written via gauss_pdf so that the alpha = 0
    // value coincides bit-for-bit with K_axis.
    return 2.0 * rho * gauss_pdf(eta) * std::sqrt(1.0 - alpha * alpha);
}

double E0(double alpha, double eta, double rho) {
    require_alpha(alpha);
    require_eta(eta, 40.0);
    require_rho(rho);
    const double lo = gauss_cdf(std::sqrt((1.0 - alpha) / (1.0 + alpha)) * eta);
    const double hi = gauss_cdf(std::sqrt((1.0 + alpha) / (1.0 - alpha)) * eta);
    return K0(alpha, eta, rho) * (lo - hi);
}

double K_axis(double eta, double rho) {
    require_eta(eta, 40.0);
    require_rho(rho);
    return 2.0 * rho * gauss_pdf(eta);
}

GradPair grad_K_at0(double eta, double rho) {
    require_eta(eta, 40.0);
    require_rho(rho);
    const double da = -(2.0 * rho / kPi) * eta * std::exp(-eta * eta);
    const double de = -rho * kTwoOverSqrt2Pi * eta * std::exp(-0.5 * eta * eta);
    return GradPair{da, de};
}

HessTriple hess_K_at0(double eta, double rho) {
    require_eta(eta, 40.0);
    require_rho(rho);
    const double fe = gauss_pdf(eta);
    const double zone = gauss_cdf(eta) - gauss_cdf(-eta);
    const double d_aa = -2.0 * rho * fe - 8.0 * rho * eta * fe * fe * (zone - 2.0 * fe);
    const double d_ae = (2.0 * rho / kPi) * (2.0 * eta * eta - 1.0) * std::exp(-eta * eta);
    const double d_ee = rho * kTwoOverSqrt2Pi * (eta * eta - 1.0) * std::exp(-0.5 * eta * eta);
    return HessTriple{d_aa, d_ae, d_ee};
}

double h_at0(double eta) {
    require_eta(eta);
    return 1.0 / gauss_cdf(-eta);
}

double dh_dalpha_at0(double eta, double x) {
    require_eta(eta);
    if (!std::isfinite(x)) throw DomainError("dh_dalpha_at0: non-finite x");
    const double f = gauss_pdf(eta);
    const double F = gauss_cdf(-eta);
    return f * f / (F * F) + x * f / F;
}

double dh_deta_at0(double eta) {
    require_eta(eta);
    const double F = gauss_cdf(-eta);
    return gauss_pdf(eta) / (F * F);
}

double d2h_dalpha2_integral_at0(double eta) {
    require_eta(eta);
    const double f = gauss_pdf(eta);
    const double F = gauss_cdf(-eta);
    return 4.0 * f * (f * f * f / (F * F) - eta * f * f / F + f / F - f);
}

double H_at0(double eta) {
    return h_at0(eta);
}

GradPair grad_H_at0(double eta) {
    require_eta(eta);
    const double f = gauss_pdf(eta);
    const double F = gauss_cdf(-eta);
    return GradPair{2.0 * f * f / (F * F), f / (F * F)};
}

HessTriple hess_H_at0(double eta) {
    require_eta(eta);
    const double f = gauss_pdf(eta);
    const double F = gauss_cdf(-eta);
    const double d_aa = d2h_dalpha2_integral_at0(eta) / F;
    const double d_ae = 4.0 * f * f / (F * F * F) * (-eta * F + f);
    const double d_ee = f / (F * F * F) * (-eta * F + 2.0 * f);
    return HessTriple{d_aa, d_ae, d_ee};
}

double lagrange_lambda(double eta, double rho) {
    require_rho(rho);
    require_eta(eta);
    if (eta == 0.0)
        throw SingularityError("lagrange_lambda: undefined at eta = 0 (grad K vanishes)");
    const double F = gauss_cdf(-eta);
    return -1.0 / (2.0 * rho * eta * F * F);
}

double constrained_second_derivative(double eta, double rho) {
    require_rho(rho);
    require_eta(eta);
    if (eta == 0.0)
        throw SingularityError("constrained_second_derivative: undefined at eta = 0");
    const double v1 = 1.0 / (2.0 * gauss_pdf(eta));  // tangent (v1, -1)
    const HessTriple H = hess_H_at0(eta);
    const HessTriple K = hess_K_at0(eta, rho);
    const double lam = lagrange_lambda(eta, rho);
    const double qH = H.d_aa * v1 * v1 - 2.0 * H.d_ae * v1 + H.d_ee;
    const double qK = K.d_aa * v1 * v1 - 2.0 * K.d_ae * v1 + K.d_ee;
    return qH - lam * qK;
}

double constrained_second_derivative_closed(double eta) {
    require_eta(eta);
    if (eta == 0.0)
        throw SingularityError("constrained_second_derivative_closed: undefined at eta = 0");
    const double f = gauss_pdf(eta);
    const double F = gauss_cdf(-eta);
    const double F2 = F * F;
    return -1.0 / (4.0 * eta * f * F2) - f * f / (F2 * F) - eta * f / F2 + 2.0 * f / F2 +
           f / (eta * F2) + 1.0 / F;
}

double improvement_ratio(double alpha, double eta) {
    require_alpha(alpha);
    if (!(std::isfinite(eta) && eta >= 0.0)) throw ParamError("eta must be >= 0");
    const double s = std::sqrt(1.0 - alpha * alpha);
    const double a = gauss_cdf(std::sqrt((1.0 - alpha) / (1.0 + alpha)) * eta);
    const double b = gauss_cdf(std::sqrt((1.0 + alpha) / (1.0 - alpha)) * eta);
    const double denom = s * (1.0 + (a - b));  // group a - b: it is exactly 0 at alpha = 0
    return (1.0 - denom) / denom;
}

}  // namespace arhyst
