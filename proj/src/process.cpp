#include "arhyst/process.hpp"

#include <cmath>
#include <numeric>
#include <thread>

namespace arhyst {

namespace {

constexpr std::uint64_t kSurvivalStepCap = 100000000ull;

// Child-stream slots used by gen_path and estimate_K_mc.
enum : std::uint64_t { kSlotX = 0, kSlotEps = 1, kSlotInit = 2 };

inline int position_update(double xs, double eta, int w_prev) {
    if (xs >= eta) return +1;
    if (xs <= -eta) return -1;
    return w_prev;
}

}  // namespace

void ModelParams::validate() const {
    if (!(std::isfinite(rho) && rho > 0.0 && rho < 1.0))
        throw ParamError("ModelParams: rho must lie in (0,1)");
    if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.99))
        throw ParamError("ModelParams: alpha must lie in [0, 0.99]");
    if (!(std::isfinite(eta) && eta >= 0.0)) throw ParamError("ModelParams: eta must be >= 0");
}

std::size_t burn_in_steps(double alpha) {
    return static_cast<std::size_t>(std::ceil(50.0 / (1.0 - alpha)));
}

std::vector<double> smooth_path(const std::vector<double>& x, double alpha, double prev_smooth) {
    if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.99))
        throw ParamError("smooth_path: alpha must lie in [0, 0.99]");
    const double s = std::sqrt(1.0 - alpha * alpha);
    std::vector<double> out(x.size());
    double prev = prev_smooth;
    for (std::size_t t = 0; t < x.size(); ++t) {
        prev = alpha * prev + s * x[t];
        out[t] = prev;
    }
    return out;
}

std::vector<int> apply_hysteresis(const std::vector<double>& x_smooth, double eta, int w0) {
    if (w0 != 1 && w0 != -1) throw ParamError("apply_hysteresis: w0 must be +1 or -1");
    std::vector<int> w(x_smooth.size());
    int prev = w0;
    for (std::size_t t = 0; t < x_smooth.size(); ++t) {
        prev = position_update(x_smooth[t], eta, prev);
        w[t] = prev;
    }
    return w;
}

SignalPath gen_path(const ModelParams& params, std::size_t T, const RngStream& seed) {
    params.validate();
    if (T < 2) throw ParamError("gen_path: need T >= 2");

    RngStream xs = seed.child(kSlotX);
    RngStream es = seed.child(kSlotEps);
    RngStream is = seed.child(kSlotInit);

    SignalPath p;
    p.x.resize(T);
    p.y.resize(T);
    for (std::size_t t = 0; t < T; ++t) p.x[t] = sample_std_normal(xs);

    const double noise = std::sqrt(1.0 - params.rho * params.rho);
    for (std::size_t t = 0; t < T; ++t)
        p.y[t] = params.rho * p.x[t] + noise * sample_std_normal(es);

    p.x_smooth = smooth_path(p.x, params.alpha, sample_std_normal(is));
    const int w0 = p.x_smooth[0] >= 0.0 ? +1 : -1;
    p.w = apply_hysteresis(p.x_smooth, params.eta, w0);
    p.burn_in = burn_in_steps(params.alpha);
    return p;
}

McEstimate estimate_K_mc(const ModelParams& params, std::size_t T, const RngStream& seed) {
    params.validate();
    const std::size_t burn = burn_in_steps(params.alpha);
    if (T < 10 * burn) throw ParamError("estimate_K_mc: need T >= 10 * burn_in");

    constexpr std::size_t kBatches = 50;
    const std::size_t batch_len = (T - burn) / kBatches;

    RngStream xs = seed.child(kSlotX);
    RngStream es = seed.child(kSlotEps);
    RngStream is = seed.child(kSlotInit);

    const double s = std::sqrt(1.0 - params.alpha * params.alpha);
    const double noise = std::sqrt(1.0 - params.rho * params.rho);

    double xsm = sample_std_normal(is);
    int w = 0;  // set from the first smoothed value below
    bool first = true;

    auto step = [&](double* wy) {
        const double x = sample_std_normal(xs);
        const double y = params.rho * x + noise * sample_std_normal(es);
        xsm = params.alpha * xsm + s * x;
        if (first) {
            w = xsm >= 0.0 ? +1 : -1;
            first = false;
        }
        w = position_update(xsm, params.eta, w);
        if (wy) *wy = w * y;
    };

    for (std::size_t t = 0; t < burn; ++t) step(nullptr);

    double batch_mean[kBatches];
    for (std::size_t b = 0; b < kBatches; ++b) {
        double acc = 0.0;
        for (std::size_t t = 0; t < batch_len; ++t) {
            double wy;
            step(&wy);
            acc += wy;
        }
        batch_mean[b] = acc / static_cast<double>(batch_len);
    }

    double mean = 0.0;
    for (double bm : batch_mean) mean += bm;
    mean /= kBatches;
    double var = 0.0;
    for (double bm : batch_mean) var += (bm - mean) * (bm - mean);
    var /= (kBatches - 1);
    return McEstimate{mean, std::sqrt(var / kBatches), kBatches};
}

std::uint64_t sample_survival_time(const ModelParams& params, const RngStream& seed) {
    params.validate();
    RngStream rng = seed;
    double xsm = sample_truncated_above(params.eta, rng);
    const double s = std::sqrt(1.0 - params.alpha * params.alpha);
    for (std::uint64_t t = 1; t <= kSurvivalStepCap; ++t) {
        xsm = params.alpha * xsm + s * sample_std_normal(rng);
        if (xsm <= -params.eta) return t;
    }
    throw NonTerminationError("sample_survival_time: step cap 1e8 exceeded");
}

McEstimate estimate_H_mc(const ModelParams& params, std::size_t n, const RngStream& seed,
                         int workers) {
    params.validate();
    if (n < 2) throw ParamError("estimate_H_mc: need n >= 2");
    if (workers < 1) throw ParamError("estimate_H_mc: workers must be >= 1");

    std::vector<double> tau(n);
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            tau[i] = static_cast<double>(sample_survival_time(params, seed.child(i)));
    };

    if (workers == 1 || n < 2 * static_cast<std::size_t>(workers)) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t w = static_cast<std::size_t>(workers);
        for (std::size_t c = 0; c < w; ++c)
            pool.emplace_back(run_range, c * n / w, (c + 1) * n / w);
        for (auto& th : pool) th.join();
    }

    // Reduce in index order so the result is identical for any worker count.
    double mean = 0.0;
    for (double t : tau) mean += t;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double t : tau) var += (t - mean) * (t - mean);
    var /= static_cast<double>(n - 1);
    return McEstimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

double trade_frequency(const SignalPath& path) {
    const std::size_t T = path.w.size();
    if (T < path.burn_in + 2) throw ParamError("trade_frequency: path shorter than burn-in + 2");
    std::size_t flips = 0;
    for (std::size_t t = path.burn_in + 1; t < T; ++t)
        if (path.w[t] != path.w[t - 1]) ++flips;
    return static_cast<double>(flips) / static_cast<double>(T - path.burn_in - 1);
}

}  // namespace arhyst
