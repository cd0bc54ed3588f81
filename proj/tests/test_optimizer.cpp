#include <cmath>

#include "doctest.h"

#include "arhyst/closed_forms.hpp"
#include "arhyst/errors.hpp"
#include "arhyst/optimizer.hpp"

using namespace arhyst;

namespace {
constexpr double kRho = 0.1;
}

TEST_CASE("eta_for_level inverts K on the axis") {
    for (double eta : {0.3, 1.0, 2.0}) {
        const double c = K_axis(eta, kRho);
        CHECK(eta_for_level(c, kRho) == doctest::Approx(eta).epsilon(1e-9));
    }
}

TEST_CASE("eta_for_level rejects unattainable levels") {
    CHECK_THROWS_AS(eta_for_level(0.08, kRho), InfeasibleError);   // above rho sqrt(2/pi)
    CHECK_THROWS_AS(eta_for_level(0.0, kRho), InfeasibleError);
    CHECK_THROWS_AS(eta_for_level(-0.01, kRho), InfeasibleError);
    CHECK_NOTHROW(eta_for_level(0.0797, kRho));
    CHECK_THROWS_AS(eta_for_level(0.01, 0.0), ParamError);
}

TEST_CASE("trace_level_curve starts from the closed form at alpha = 0") {
    const double c = K_axis(1.0, kRho);
    const std::vector<LevelCurvePoint> pts = trace_level_curve(c, kRho, {0.0}, 100000, RngStream(5, 0));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].source == CurveSource::closed_form);
    CHECK(pts[0].alpha == 0.0);
    CHECK(pts[0].eta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pts[0].K_value.mean == doctest::Approx(c).epsilon(1e-12));
    CHECK(pts[0].K_value.std_error == 0.0);
    CHECK(pts[0].H_value == doctest::Approx(6.3029743750687541).epsilon(1e-7));
}

TEST_CASE("trace_level_curve holds the level within its acceptance band") {
    const double c = K_axis(1.0, kRho);
    const std::vector<LevelCurvePoint> pts =
        trace_level_curve(c, kRho, {0.0, 0.1}, 400000, RngStream(17, 0));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].source == CurveSource::monte_carlo);
    const double tol = std::max(2.0 * pts[1].K_value.std_error, 1e-6);
    CHECK(std::abs(pts[1].K_value.mean - c) <= tol);
    CHECK(pts[1].eta > 0.6);
    CHECK(pts[1].eta < 1.4);
    CHECK(pts[1].H_value > 1.0);
}

TEST_CASE("trace_level_curve is deterministic under a fixed seed") {
    const double c = K_axis(1.0, kRho);
    const auto a = trace_level_curve(c, kRho, {0.0, 0.1}, 200000, RngStream(23, 1));
    const auto b = trace_level_curve(c, kRho, {0.0, 0.1}, 200000, RngStream(23, 1));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].eta == b[i].eta);
        CHECK(a[i].K_value.mean == b[i].K_value.mean);
        CHECK(a[i].H_value == b[i].H_value);
    }
}

TEST_CASE("trace_level_curve stops at the first infeasible alpha") {
    // a level just under the axis maximum becomes unreachable at alpha = 0.5
    const double c = K_axis(0.05, kRho);
    const std::vector<LevelCurvePoint> pts =
        trace_level_curve(c, kRho, {0.0, 0.5}, 1000000, RngStream(31, 0));
    CHECK(pts.size() == 1);
}

TEST_CASE("trace_level_curve validates its grid") {
    const double c = K_axis(1.0, kRho);
    CHECK_THROWS_AS(trace_level_curve(c, kRho, {}, 100000, RngStream(1, 1)), ParamError);
    CHECK_THROWS_AS(trace_level_curve(c, kRho, {0.6}, 100000, RngStream(1, 1)), ParamError);
    CHECK_THROWS_AS(trace_level_curve(c, kRho, {-0.1}, 100000, RngStream(1, 1)), ParamError);
}

TEST_CASE("local_optimality_report certifies the axis point") {
    const OptimalityReport r = local_optimality_report(1.0, kRho);
    CHECK(r.eta0 == 1.0);
    CHECK(r.c == doctest::Approx(K_axis(1.0, kRho)).epsilon(1e-14));
    CHECK(r.lambda == doctest::Approx(-198.63742986386676).epsilon(1e-12));
    CHECK(r.collinearity_residual <= 1e-12);
    CHECK(r.constrained_second_derivative == doctest::Approx(-30.1779606766535).epsilon(1e-12));
    CHECK(r.passes());
    CHECK(r.grad_H.d_alpha == doctest::Approx(4.6520752211812648).epsilon(1e-12));
    CHECK(r.grad_K.d_eta == doctest::Approx(-0.04839414490382867).epsilon(1e-12));
}

TEST_CASE("local optimality holds along the axis") {
    for (int k = 1; k <= 60; ++k) {
        const OptimalityReport r = local_optimality_report(0.05 * k, kRho);
        CHECK(r.passes());
    }
    CHECK_THROWS_AS(local_optimality_report(0.0, kRho), SingularityError);
    CHECK_THROWS_AS(local_optimality_report(-1.0, kRho), SingularityError);
}

TEST_CASE("improvement_table is row-major with alpha slow") {
    const std::vector<double> alphas{0.0, 0.4};
    const std::vector<double> etas{0.5, 1.0, 2.0};
    const std::vector<ImprovementCell> t = improvement_table(alphas, etas);
    REQUIRE(t.size() == 6);
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = 0; j < etas.size(); ++j) {
            const ImprovementCell& c = t[i * etas.size() + j];
            CHECK(c.alpha == alphas[i]);
            CHECK(c.eta == etas[j]);
            CHECK(c.R == improvement_ratio(alphas[i], etas[j]));
        }
    CHECK_THROWS_AS(improvement_table({}, {1.0}), ParamError);
}
