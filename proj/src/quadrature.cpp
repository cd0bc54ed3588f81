#include "arhyst/quadrature.hpp"

#include <cmath>

#include "arhyst/closed_forms.hpp"
#include "arhyst/gaussian.hpp"

namespace arhyst {

namespace {

void check_params(double alpha, double eta, double rho, const QuadConfig& cfg,
                  bool positive_alpha) {
    if (!(std::isfinite(alpha) && alpha <= 0.99 && (positive_alpha ? alpha > 0.0 : alpha >= 0.0)))
        throw ParamError(positive_alpha ? "alpha must lie in (0, 0.99]"
                                        : "alpha must lie in [0, 0.99]");
    if (!(std::isfinite(eta) && eta >= 0.0)) throw ParamError("eta must be >= 0");
    if (!(std::isfinite(rho) && rho > 0.0 && rho < 1.0)) throw ParamError("rho must lie in (0,1)");
    if (!(cfg.abs_tol > 0.0)) throw ParamError("QuadConfig: abs_tol must be > 0");
    if (!(cfg.domain_radius >= 8.0)) throw ParamError("QuadConfig: domain_radius must be >= 8");
}

}  // namespace

double K0_numeric(double alpha, double eta, double rho, const QuadConfig& cfg) {
    check_params(alpha, eta, rho, cfg, false);
    const double R = cfg.domain_radius;
    const double s = std::sqrt(1.0 - alpha * alpha);
    std::size_t budget = cfg.max_subdivisions;
    const double inner_tol = 0.25 * cfg.abs_tol / (2.0 * R);

    auto outer = [&](double z) {
        double xlo = (eta - alpha * z) / s;
        if (xlo >= R) return 0.0;
        if (xlo < -R) xlo = -R;
        const double fz = gauss_pdf(z);
        auto inner = [&](double x) { return 2.0 * rho * x * gauss_pdf(x) * fz; };
        return detail::integrate(inner, xlo, R, inner_tol, budget);
    };
    return detail::integrate(outer, -R, R, 0.5 * cfg.abs_tol, budget);
}

double E0_numeric(double alpha, double eta, double rho, const QuadConfig& cfg) {
    check_params(alpha, eta, rho, cfg, true);
    const double R = cfg.domain_radius;
    const double s = std::sqrt(1.0 - alpha * alpha);
    std::size_t budget = cfg.max_subdivisions;
    const double inner_tol = 0.25 * cfg.abs_tol / (R - eta + 1.0);

    auto outer = [&](double z) {
        const double xa = (-eta - alpha * z) / s;
        const double xb = (eta - alpha * z) / s;
        const double fz = gauss_pdf(z);
        auto inner = [&](double x) { return 2.0 * rho * x * gauss_pdf(x) * fz; };
        return detail::integrate(inner, xa, xb, inner_tol, budget);
    };
    return detail::integrate(outer, eta, R, 0.5 * cfg.abs_tol, budget);
}

double E1_numeric(double alpha, double eta, double rho, const QuadConfig& cfg) {
    check_params(alpha, eta, rho, cfg, true);
    const double R = cfg.domain_radius;
    const double s = std::sqrt(1.0 - alpha * alpha);
    std::size_t budget = cfg.max_subdivisions;
    const double inner_tol = 0.25 * cfg.abs_tol / (R - eta + 1.0);
    constexpr double kInv2Pi32 = 0.06349363593424096978576330493464;  // (2 pi)^{-3/2}

    auto outer = [&](double z) {
        const double ya = (-eta - alpha * z) / s;
        const double yb = (eta - alpha * z) / s;
        auto inner = [&](double y) {
            const double u = s * y + alpha * z;
            const double xlo = (-eta - alpha * u) / s;
            const double xhi = (eta - alpha * u) / s;
            // analytic inner x-integral: int_{xlo}^{xhi} x e^{-x^2/2} dx
            const double xpart = std::exp(-0.5 * xlo * xlo) - std::exp(-0.5 * xhi * xhi);
            return xpart * std::exp(-0.5 * (y * y + z * z));
        };
        return detail::integrate(inner, ya, yb, inner_tol, budget);
    };
    const double val = detail::integrate(outer, eta, R, 0.5 * cfg.abs_tol, budget);
    return 2.0 * rho * kInv2Pi32 * val;
}

double K_truncated(double alpha, double eta, double rho, const QuadConfig& cfg) {
    if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.5))
        throw ParamError("K_truncated: alpha must lie in [0, 0.5]");
    if (alpha == 0.0) return K0(0.0, eta, rho);  // E terms vanish identically
    return K0(alpha, eta, rho) + E0(alpha, eta, rho) + E1_numeric(alpha, eta, rho, cfg);
}

}  // namespace arhyst
