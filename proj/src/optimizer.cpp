#include "arhyst/optimizer.hpp"

#include <cmath>

#include "arhyst/gaussian.hpp"

namespace arhyst {

namespace {

constexpr double kEtaSearchMax = 6.0;

}  // namespace

double eta_for_level(double c, double rho) {
    if (!(std::isfinite(rho) && rho > 0.0 && rho < 1.0)) throw ParamError("rho must lie in (0,1)");
    const double k_max = K_axis(0.0, rho);  // rho sqrt(2/pi)
    if (!(std::isfinite(c) && c > 0.0 && c < k_max))
        throw InfeasibleError("eta_for_level: c outside the attainable range (0, rho sqrt(2/pi))");

    double lo = 0.0, hi = kEtaSearchMax;  // K_axis strictly decreasing in eta
    if (K_axis(hi, rho) >= c) throw InfeasibleError("eta_for_level: c below K at the eta cap");
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (K_axis(mid, rho) >= c ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<LevelCurvePoint> trace_level_curve(double c, double rho,
                                               const std::vector<double>& alpha_grid,
                                               std::size_t budget, const RngStream& seed,
                                               const SolverConfig& solver_cfg) {
    if (alpha_grid.empty()) throw ParamError("trace_level_curve: empty alpha grid");
    for (double a : alpha_grid)
        if (!(a >= 0.0 && a <= 0.5)) throw ParamError("trace_level_curve: alpha must lie in [0, 0.5]");

    std::vector<LevelCurvePoint> points;
    points.reserve(alpha_grid.size());

    for (double alpha : alpha_grid) {
        if (alpha == 0.0) {
            const double eta0 = eta_for_level(c, rho);
            points.push_back(LevelCurvePoint{0.0, eta0,
                                             McEstimate{K_axis(eta0, rho), 0.0, 1},
                                             compute_H({rho, 0.0, eta0}, solver_cfg),
                                             CurveSource::closed_form});
            continue;
        }

        // Bisection on a noisy but monotone (common random numbers) function.
        auto K_hat = [&](double eta) { return estimate_K_mc({rho, alpha, eta}, budget, seed); };

        const McEstimate at_zero = K_hat(0.0);
        if (at_zero.mean + 2.0 * at_zero.std_error < c) break;  // level unreachable from here on

        double lo = 0.0, hi = kEtaSearchMax;
        McEstimate est = at_zero;
        double eta = 0.0;
        bool accepted = std::abs(at_zero.mean - c) <= std::max(2.0 * at_zero.std_error, 1e-6);
        while (!accepted && hi - lo > 1e-9) {
            eta = 0.5 * (lo + hi);
            est = K_hat(eta);
            if (std::abs(est.mean - c) <= std::max(2.0 * est.std_error, 1e-6)) {
                accepted = true;
                break;
            }
            (est.mean > c ? lo : hi) = eta;
        }
        if (!accepted)
            throw ConvergenceError("trace_level_curve: bisection interval collapsed without "
                                   "reaching the acceptance band");
        points.push_back(LevelCurvePoint{alpha, eta, est,
                                         compute_H({rho, alpha, eta}, solver_cfg),
                                         CurveSource::monte_carlo});
    }
    return points;
}

OptimalityReport local_optimality_report(double eta0, double rho) {
    if (!(std::isfinite(eta0) && eta0 > 0.0))
        throw SingularityError("local_optimality_report: eta0 must be > 0");

    OptimalityReport r;
    r.eta0 = eta0;
    r.c = K_axis(eta0, rho);
    r.grad_K = grad_K_at0(eta0, rho);
    r.grad_H = grad_H_at0(eta0);
    r.lambda = lagrange_lambda(eta0, rho);
    const double det = r.grad_H.d_alpha * r.grad_K.d_eta - r.grad_H.d_eta * r.grad_K.d_alpha;
    const double nH = std::hypot(r.grad_H.d_alpha, r.grad_H.d_eta);
    const double nK = std::hypot(r.grad_K.d_alpha, r.grad_K.d_eta);
    r.collinearity_residual = std::abs(det) / (nH * nK);
    r.constrained_second_derivative = constrained_second_derivative(eta0, rho);
    return r;
}

std::vector<ImprovementCell> improvement_table(const std::vector<double>& alpha_grid,
                                               const std::vector<double>& eta_grid) {
    if (alpha_grid.empty() || eta_grid.empty()) throw ParamError("improvement_table: empty grid");
    std::vector<ImprovementCell> cells;
    cells.reserve(alpha_grid.size() * eta_grid.size());
    for (double a : alpha_grid)
        for (double e : eta_grid) cells.push_back(ImprovementCell{a, e, improvement_ratio(a, e)});
    return cells;
}

}  // namespace arhyst
