#include <cmath>

#include "doctest.h"

#include "arhyst/closed_forms.hpp"
#include "arhyst/errors.hpp"
#include "arhyst/gaussian.hpp"

using namespace arhyst;

// Reference numbers are 50-digit evaluations of the formulas, truncated to
// double.  Finite-difference cases differentiate one exported function to
// check another, so an error in a shared constant cannot cancel silently.

namespace {
constexpr double kRho = 0.1;
}

TEST_CASE("K_axis matches references and scales linearly in rho") {
    CHECK(K_axis(1.0, kRho) == doctest::Approx(0.04839414490382867).epsilon(1e-14));
    CHECK(K_axis(0.5, kRho) == doctest::Approx(0.070413065352859896).epsilon(1e-14));
    CHECK(K_axis(2.0, kRho) == doctest::Approx(0.01079819330263761).epsilon(1e-14));
    CHECK(K_axis(0.0, kRho) == doctest::Approx(0.079788456080286536).epsilon(1e-14));
    CHECK(K_axis(1.0, 0.5) == doctest::Approx(5.0 * K_axis(1.0, kRho)).epsilon(1e-14));
}

TEST_CASE("K0 and E0 match references off the axis") {
    CHECK(K0(0.3, 0.5, kRho) == doctest::Approx(0.067169783332026373).epsilon(1e-14));
    CHECK(E0(0.3, 0.5, kRho) == doctest::Approx(-0.0073237236548515204).epsilon(1e-13));
    CHECK(K0(0.5, 1.0, kRho) == doctest::Approx(0.041910558881140858).epsilon(1e-14));
    CHECK(E0(0.5, 1.0, kRho) == doctest::Approx(-0.010067719773172429).epsilon(1e-13));
}

TEST_CASE("K0 and E0 degenerate exactly on the axis") {
    for (double eta : {0.0, 0.5, 1.0, 2.0}) {
        CHECK(K0(0.0, eta, kRho) == K_axis(eta, kRho));
        CHECK(E0(0.0, eta, kRho) == 0.0);
    }
}

TEST_CASE("H_at0 equals the inverse tail mass") {
    CHECK(H_at0(0.25) == doctest::Approx(2.4919406011116556).epsilon(1e-14));
    CHECK(H_at0(0.5) == doctest::Approx(3.2410967045669699).epsilon(1e-14));
    CHECK(H_at0(1.0) == doctest::Approx(6.3029743750687541).epsilon(1e-14));
    CHECK(H_at0(2.0) == doctest::Approx(43.955789015985658).epsilon(1e-14));
    CHECK(H_at0(0.0) == 2.0);
}

TEST_CASE("gradients at alpha = 0 match references") {
    const GradPair gk = grad_K_at0(1.0, kRho);
    CHECK(gk.d_alpha == doctest::Approx(-0.023419932609727664).epsilon(1e-13));
    CHECK(gk.d_eta == doctest::Approx(-0.04839414490382867).epsilon(1e-13));

    const GradPair gh1 = grad_H_at0(1.0);
    CHECK(gh1.d_alpha == doctest::Approx(4.6520752211812648).epsilon(1e-13));
    CHECK(gh1.d_eta == doctest::Approx(9.6128885641560722).epsilon(1e-13));

    const GradPair gh05 = grad_H_at0(0.5);
    CHECK(gh05.d_alpha == doctest::Approx(2.6041169560563066).epsilon(1e-13));
    CHECK(gh05.d_eta == doctest::Approx(3.6983434011945595).epsilon(1e-13));
}

TEST_CASE("grad_K d_eta equals -eta K_axis") {
    for (double eta : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        CHECK(grad_K_at0(eta, kRho).d_eta ==
              doctest::Approx(-eta * K_axis(eta, kRho)).epsilon(1e-13));
    }
}

TEST_CASE("Hessians at alpha = 0 match references") {
    const HessTriple hk = hess_K_at0(1.0, kRho);
    CHECK(hk.d_aa == doctest::Approx(-0.057703476455206923).epsilon(1e-12));
    CHECK(hk.d_ae == doctest::Approx(0.023419932609727664).epsilon(1e-13));
    CHECK(std::abs(hk.d_ee) <= 1e-17);  // (eta^2 - 1) factor vanishes at eta = 1

    const HessTriple hh = hess_H_at0(1.0);
    CHECK(hh.d_aa == doctest::Approx(9.0102519552423911).epsilon(1e-12));
    CHECK(hh.d_ae == doctest::Approx(4.8859376119933625).epsilon(1e-12));
    CHECK(hh.d_ee == doctest::Approx(19.709022345841746).epsilon(1e-12));
}

TEST_CASE("eta-derivatives are consistent under central differences") {
    const double d = 1e-5;
    for (double eta : {0.5, 1.0, 1.7}) {
        const double fd_H = (H_at0(eta + d) - H_at0(eta - d)) / (2.0 * d);
        CHECK(fd_H == doctest::Approx(grad_H_at0(eta).d_eta).epsilon(1e-8));

        const double fd_K = (K_axis(eta + d, kRho) - K_axis(eta - d, kRho)) / (2.0 * d);
        CHECK(fd_K == doctest::Approx(grad_K_at0(eta, kRho).d_eta).epsilon(1e-8));

        const double fd_Hee = (grad_H_at0(eta + d).d_eta - grad_H_at0(eta - d).d_eta) / (2.0 * d);
        CHECK(fd_Hee == doctest::Approx(hess_H_at0(eta).d_ee).epsilon(1e-7));

        const double fd_Kee =
            (grad_K_at0(eta + d, kRho).d_eta - grad_K_at0(eta - d, kRho).d_eta) / (2.0 * d);
        CHECK(fd_Kee == doctest::Approx(hess_K_at0(eta, kRho).d_ee).epsilon(2e-6));

        const double fd_Kae =
            (grad_K_at0(eta + d, kRho).d_alpha - grad_K_at0(eta - d, kRho).d_alpha) / (2.0 * d);
        CHECK(fd_Kae == doctest::Approx(hess_K_at0(eta, kRho).d_ae).epsilon(1e-7));

        const double fd_Hae =
            (grad_H_at0(eta + d).d_alpha - grad_H_at0(eta - d).d_alpha) / (2.0 * d);
        CHECK(fd_Hae == doctest::Approx(hess_H_at0(eta).d_ae).epsilon(1e-7));
    }
}

TEST_CASE("pointwise h-derivatives integrate to the H gradient") {
    for (double eta : {0.5, 1.0}) {
        // d_alpha of h at x = eta: f^2/F^2 + eta f/F with F = F(-eta)
        const double f = gauss_pdf(eta);
        const double F = gauss_cdf(-eta);
        CHECK(dh_dalpha_at0(eta, eta) ==
              doctest::Approx(f * f / (F * F) + eta * f / F).epsilon(1e-13));
        CHECK(dh_deta_at0(eta) == doctest::Approx(f / (F * F)).epsilon(1e-13));
        CHECK(h_at0(eta) == doctest::Approx(1.0 / F).epsilon(1e-14));

        // the x-averaged second derivative equals d_aa times the tail mass
        CHECK(d2h_dalpha2_integral_at0(eta) ==
              doctest::Approx(hess_H_at0(eta).d_aa * F).epsilon(1e-12));
    }
    CHECK(d2h_dalpha2_integral_at0(0.5) == doctest::Approx(1.4738230925955458).epsilon(1e-12));
    CHECK(d2h_dalpha2_integral_at0(1.0) == doctest::Approx(1.4295238119453888).epsilon(1e-12));
}

TEST_CASE("the two gradients are collinear along the whole axis") {
    for (int k = 1; k <= 60; ++k) {
        const double eta = 0.05 * k;
        const GradPair gh = grad_H_at0(eta);
        const GradPair gk = grad_K_at0(eta, kRho);
        const double det = gh.d_alpha * gk.d_eta - gh.d_eta * gk.d_alpha;
        const double scale = std::hypot(gh.d_alpha, gh.d_eta) * std::hypot(gk.d_alpha, gk.d_eta);
        CHECK(std::abs(det) / scale <= 1e-12);
        // the ratio of the components is the multiplier
        CHECK(gh.d_alpha / gk.d_alpha == doctest::Approx(lagrange_lambda(eta, kRho)).epsilon(1e-10));
    }
}

TEST_CASE("lagrange_lambda matches the reference and rejects eta = 0") {
    CHECK(lagrange_lambda(1.0, kRho) == doctest::Approx(-198.63742986386676).epsilon(1e-13));
    CHECK(lagrange_lambda(1.0, kRho) < 0.0);
    CHECK_THROWS_AS(lagrange_lambda(0.0, kRho), SingularityError);
}

TEST_CASE("constrained curvature: assembled and simplified forms agree") {
    CHECK(constrained_second_derivative(1.0, kRho) ==
          doctest::Approx(-30.1779606766535).epsilon(1e-12));
    CHECK(constrained_second_derivative_closed(0.5) ==
          doctest::Approx(-2.9534901243034791).epsilon(1e-12));
    CHECK(constrained_second_derivative_closed(1.0) ==
          doctest::Approx(-30.1779606766535).epsilon(1e-12));
    CHECK(constrained_second_derivative_closed(2.0) ==
          doctest::Approx(-4624.6799907334099).epsilon(1e-12));

    for (int k = 1; k <= 60; ++k) {
        const double eta = 0.05 * k;
        const double assembled = constrained_second_derivative(eta, kRho);
        const double closed = constrained_second_derivative_closed(eta);
        CHECK(assembled < 0.0);
        CHECK(std::abs(assembled - closed) <= 1e-9 * std::abs(closed));
    }
    // independent of rho: the multiplier absorbs the scale
    CHECK(constrained_second_derivative(1.0, 0.7) ==
          doctest::Approx(constrained_second_derivative(1.0, kRho)).epsilon(1e-12));
    CHECK_THROWS_AS(constrained_second_derivative(0.0, kRho), SingularityError);
}

TEST_CASE("improvement_ratio matches references and vanishes on the axis") {
    CHECK(improvement_ratio(0.2, 1.0) == doctest::Approx(0.12997071323078676).epsilon(1e-13));
    CHECK(improvement_ratio(0.5, 0.5) == doctest::Approx(0.43116937420970134).epsilon(1e-13));
    for (double eta : {0.1, 0.5, 1.0, 2.0, 4.0}) CHECK(improvement_ratio(0.0, eta) == 0.0);
    CHECK(improvement_ratio(0.1, 1.0) < improvement_ratio(0.2, 1.0));
    CHECK(improvement_ratio(0.2, 1.0) < improvement_ratio(0.4, 1.0));
}

TEST_CASE("improvement_ratio satisfies the truncated-K identity") {
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double e : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double ks = K0(a, e, kRho) + E0(a, e, kRho);
            const double rhs = (K_axis(e, kRho) - ks) / ks;
            CHECK(std::abs(improvement_ratio(a, e) - rhs) <= 1e-12);
        }
}

TEST_CASE("domain guards reject out-of-range arguments") {
    CHECK_THROWS_AS(H_at0(8.5), UnsupportedRegionError);
    CHECK_THROWS_AS(grad_H_at0(9.0), UnsupportedRegionError);
    CHECK_THROWS_AS(K_axis(41.0, kRho), UnsupportedRegionError);
    CHECK_THROWS_AS(K_axis(-1.0, kRho), ParamError);
    CHECK_THROWS_AS(K_axis(1.0, 0.0), ParamError);
    CHECK_THROWS_AS(K0(1.0, 1.0, kRho), ParamError);   // alpha > 0.99
    CHECK_THROWS_AS(improvement_ratio(-0.1, 1.0), ParamError);
    CHECK_NOTHROW(K_axis(20.0, kRho));  // K-family tolerates deep thresholds
}
