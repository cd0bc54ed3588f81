#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arhyst/closed_forms.hpp"
#include "arhyst/process.hpp"

// Solver for the expected-survival-time integral equation
//
//   h(x) = 1 + int_{-eta}^{inf} h(y) f((y - alpha x)/s) / s dy,   s = sqrt(1-alpha^2),
//
// via damped fixed-point continuation: the damped operator multiplies the
// integrand by phi_beta (1 for y <= 0, e^{-beta y} for y >= 1, a monotone
// cubic Hermite bridge between), which restores a sup-norm contraction. The
// solver sweeps a decreasing beta schedule with warm starts, extrapolates the
// last two solutions linearly to beta = 0, then polishes with the undamped
// operator on the truncated domain (strictly sub-stochastic there, so the
// iteration still converges geometrically). H(alpha,eta) is the f-weighted
// average of h over [eta, inf), normalized by F(-eta).

namespace arhyst {

struct SolverConfig {
    double x_max = 12.0;       // requested truncation point; extended automatically
                               // when alpha pushes kernel mass past it
    std::size_t n_grid = 2001; // target node count on [-eta, x_max]; must be odd >= 201
    std::vector<double> beta_schedule = {0.2, 0.1, 0.05, 0.02, 0.01, 0.005};
    double fp_tol = 1e-10;     // sup-norm fixed-point tolerance
    std::size_t max_iter = 100000;  // per damping stage

    void validate() const;
};

struct HGrid {
    double eta = 0.0;
    double alpha = 0.0;
    std::vector<double> nodes;   // uniform on [-eta, x_end], -eta and +eta exact nodes
    std::vector<double> values;  // h at the nodes
    double beta_used = 0.0;      // last damping level of the schedule
    std::size_t iterations = 0;  // total operator applications
    double residual = 0.0;       // sup-norm defect under the undamped truncated operator
};

// One application of the damped operator to the values of g (same grid,
// alpha and eta taken from g). Exposed so tests can measure contraction.
HGrid apply_T_beta(const HGrid& g, double beta);

// Damping multiplier phi_beta.
double phi_beta(double y, double beta);

HGrid solve_h(const ModelParams& params, const SolverConfig& cfg = {});

// (1 / F(-eta)) int_{eta}^{x_end} h f, by composite Simpson on the grid.
double compute_H(const ModelParams& params, const SolverConfig& cfg = {});

// Finite-difference gradient of H at (0, eta) from full solver runs:
// one-sided second-order in alpha (alpha < 0 undefined), central in eta.
GradPair fd_grad_H(double eta, const SolverConfig& cfg, double step);

struct ContourCell {
    double alpha;
    double eta;
    double H;            // NaN when not ok
    bool ok;
    std::string status;  // "ok" or the error message
};

// H over the product grid, row-major with alpha as the slow index. Failed
// cells carry their error in `status` instead of aborting the sweep.
std::vector<ContourCell> contour_grid(const std::vector<double>& alpha_grid,
                                      const std::vector<double>& eta_grid,
                                      const SolverConfig& cfg = {}, int workers = 1);

}  // namespace arhyst
