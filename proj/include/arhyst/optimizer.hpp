#pragma once

#include <cstddef>
#include <vector>

#include "arhyst/closed_forms.hpp"
#include "arhyst/process.hpp"
#include "arhyst/survival_solver.hpp"

// Constrained-optimality verification: locate eta0 with K(0, eta0) = c, trace
// the level curve K = c into alpha > 0 with Monte Carlo, and compare the
// expected survival time along it against the alpha = 0 point.

namespace arhyst {

enum class CurveSource { closed_form, solver, monte_carlo };

struct LevelCurvePoint {
    double alpha;
    double eta;
    McEstimate K_value;  // stderr 0 for the closed-form axis point
    double H_value;      // from the survival solver
    CurveSource source;  // how K_value was obtained
};

// Unique root of K(0, eta) = c; requires 0 < c < rho sqrt(2/pi).
double eta_for_level(double c, double rho);

// For each alpha, bisect eta until the Monte Carlo estimate of K (at T =
// budget steps) is within max(2 stderr, 1e-6) of c. Every estimate reuses the
// same seed (common random numbers), which makes the noisy bisection stable
// and the H comparison along the curve sharp. Tracing stops at the first
// alpha whose whole eta range cannot reach c; the returned points then cover
// only the feasible prefix of alpha_grid.
std::vector<LevelCurvePoint> trace_level_curve(double c, double rho,
                                               const std::vector<double>& alpha_grid,
                                               std::size_t budget, const RngStream& seed,
                                               const SolverConfig& solver_cfg = {});

// Gradients, multiplier, collinearity residual and curve curvature at
// (alpha, eta) = (0, eta0); see OptimalityReport::passes().
OptimalityReport local_optimality_report(double eta0, double rho);

struct ImprovementCell {
    double alpha;
    double eta;
    double R;
};

// improvement_ratio over the product grid, row-major with alpha slow.
std::vector<ImprovementCell> improvement_table(const std::vector<double>& alpha_grid,
                                               const std::vector<double>& eta_grid);

}  // namespace arhyst
