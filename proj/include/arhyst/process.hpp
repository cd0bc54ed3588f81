#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "arhyst/gaussian.hpp"

// Simulation of the smoothed-signal / hysteresis-position process and the
// Monte Carlo estimators that serve as ground truth for the analytic modules.
//
// Model: raw signal X_t iid N(0,1); smoothed signal
//   Xs_t = alpha * Xs_{t-1} + sqrt(1-alpha^2) * X_t   (unit variance, lag-1
//   autocorrelation alpha); return Y_t = rho * X_t + sqrt(1-rho^2) * eps_t;
// position W_t = +1 if Xs_t >= eta, -1 if Xs_t <= -eta, else W_{t-1}.

namespace arhyst {

struct ModelParams {
    double rho;    // signal/return correlation, in (0,1)
    double alpha;  // smoothing weight, in [0, 0.99]
    double eta;    // hysteresis threshold, >= 0

    void validate() const;
};

struct SignalPath {
    std::vector<double> x;         // raw signal
    std::vector<double> x_smooth;  // smoothed signal
    std::vector<double> y;         // return
    std::vector<int> w;            // position, each +1 or -1
    std::size_t burn_in = 0;       // steps to discard before averaging
};

struct McEstimate {
    double mean;
    double std_error;   // sample sd of the iid units / sqrt(n)
    std::size_t n;      // number of iid units behind std_error
};

// Steps discarded before stationary averaging: ceil(50 / (1 - alpha)).
std::size_t burn_in_steps(double alpha);

// Applies the smoothing recursion. prev_smooth is the smoothed value just
// before the window (stationary start: one N(0,1) draw), so that the
// recursion holds at index 0 as well and alpha = 0 reproduces the input.
std::vector<double> smooth_path(const std::vector<double>& x, double alpha, double prev_smooth);

// Threshold rule with memory. w0 is the position held before index 0 and is
// used only while the signal stays strictly inside (-eta, eta). The weak
// inequalities at the thresholds take precedence (eta = 0 maps >= 0 to +1).
std::vector<int> apply_hysteresis(const std::vector<double>& x_smooth, double eta, int w0);

// Full path of length T. Raw-signal, noise and initialization draws come from
// three child streams of `seed`, so x and eps are independent. The initial
// position inside the zone is the sign of the first smoothed value (ties to +1).
SignalPath gen_path(const ModelParams& params, std::size_t T, const RngStream& seed);

// Time-average estimate of K = E[W_t Y_t] over T steps (after burn-in), with
// a batch-means standard error: W_t Y_t is serially dependent, so the iid
// units are 50 equal-length batches and n reports the batch count.
McEstimate estimate_K_mc(const ModelParams& params, std::size_t T, const RngStream& seed);

// One draw of the survival time: start the smoothed signal above eta
// (truncated draw), return the first t >= 1 with Xs_t <= -eta. Hard cap 1e8
// steps; exceeding it throws NonTerminationError rather than truncating.
std::uint64_t sample_survival_time(const ModelParams& params, const RngStream& seed);

// Mean/stderr of n independent survival draws, one child stream per draw.
// Draw i is a pure function of (seed, i), so any worker partition yields the
// same numbers; workers > 1 splits the index range across threads.
McEstimate estimate_H_mc(const ModelParams& params, std::size_t n, const RngStream& seed,
                         int workers = 1);

// Fraction of post-burn-in steps whose position differs from the previous one.
double trade_frequency(const SignalPath& path);

}  // namespace arhyst
