#include "arhyst/survival_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <thread>

#include "arhyst/gaussian.hpp"

namespace arhyst {

namespace {

constexpr std::size_t kNodeCap = 4001;   // keeps the kernel matrix under ~130 MB
constexpr double kTailReach = 7.1;       // F(-7.03) ~ 1e-12: mass check margin

struct Grid {
    std::vector<double> nodes;
    Eigen::VectorXd simpson;   // composite Simpson weights (even interval count)
    std::size_t eta_index;     // node index of +eta
    double dx;
};

double effective_x_max(double x_max, double alpha, double eta) {
    const double reach = eta + 6.0 / (1.0 - alpha);
    const double mass = kTailReach * std::sqrt((1.0 + alpha) / (1.0 - alpha));
    return std::max({x_max, reach, mass});
}

// Uniform grid on [-eta, >= x_eff] with -eta and +eta exact nodes and an even
// interval count both overall and above +eta (composite Simpson needs both).
Grid build_grid(double eta, double alpha, const SolverConfig& cfg) {
    const double x_eff = effective_x_max(cfg.x_max, alpha, eta);
    const double dx_ref = (cfg.x_max + eta) / static_cast<double>(cfg.n_grid - 1);
    double dx = std::max(dx_ref, (x_eff + eta) / static_cast<double>(kNodeCap - 1));

    std::size_t m = 0;
    if (eta > 0.0) {
        m = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(eta / dx)));
        dx = 2.0 * eta / static_cast<double>(m);
    }
    const std::size_t n_hi = 2 * static_cast<std::size_t>(std::ceil((x_eff - eta) / (2.0 * dx)));
    const std::size_t N = m + n_hi;  // interval count, even

    // threshold alignment can shrink dx below the cap-derived floor; refuse
    // grids whose kernel matrix would not fit a sane memory budget
    if (N + 1 > kNodeCap + 800)
        throw ConvergenceError("solve_h: grid would exceed the node cap; shrink the eta/alpha box");

    const double s = std::sqrt(1.0 - alpha * alpha);
    if (s / dx < 4.0)
        throw ConvergenceError(
            "solve_h: grid cannot resolve the kernel width at this alpha; raise n_grid");

    Grid g;
    g.dx = dx;
    g.eta_index = m;
    g.nodes.resize(N + 1);
    for (std::size_t i = 0; i < m; ++i) g.nodes[i] = -eta + dx * static_cast<double>(i);
    g.nodes[m] = eta;
    for (std::size_t i = m + 1; i <= N; ++i) g.nodes[i] = eta + dx * static_cast<double>(i - m);

    g.simpson = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N + 1));
    g.simpson(0) = g.simpson(static_cast<Eigen::Index>(N)) = dx / 3.0;
    for (std::size_t i = 1; i < N; ++i) g.simpson(static_cast<Eigen::Index>(i)) = (i % 2 ? 4.0 : 2.0) * dx / 3.0;
    return g;
}

// Kernel matrix M(i,j) = w_j f((x_j - alpha x_i)/s) / s; (T g)_i = 1 + (M (phi .* g))_i.
Eigen::MatrixXd kernel_matrix(const Grid& g, double alpha) {
    const double s = std::sqrt(1.0 - alpha * alpha);
    const auto n = static_cast<Eigen::Index>(g.nodes.size());
    Eigen::MatrixXd M(n, n);
    constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double c = alpha * g.nodes[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            const double t = (g.nodes[static_cast<std::size_t>(j)] - c) / s;
            M(i, j) = g.simpson(j) * kInvSqrt2Pi * std::exp(-0.5 * t * t) / s;
        }
    }
    return M;
}

void check_truncation(const Grid& g, double alpha) {
    const double s = std::sqrt(1.0 - alpha * alpha);
    const double x_end = g.nodes.back();
    double worst = 0.0;
    for (double x : {g.nodes.front(), x_end}) {  // mass is monotone in the node; ends suffice
        worst = std::max(worst, gauss_cdf((alpha * x - x_end) / s));
    }
    if (worst > 1e-12)
        throw TruncationError("solve_h: kernel mass beyond x_max exceeds 1e-12; raise x_max");
}

Eigen::VectorXd phi_vector(const Grid& g, double beta) {
    const auto n = static_cast<Eigen::Index>(g.nodes.size());
    Eigen::VectorXd phi(n);
    for (Eigen::Index j = 0; j < n; ++j) phi(j) = phi_beta(g.nodes[static_cast<std::size_t>(j)], beta);
    return phi;
}

// Iterates g <- 1 + M (phi .* g) until the sup-norm step is <= tol. The final
// step size equals the fixed-point defect of the returned iterate.
std::size_t iterate_stage(const Eigen::MatrixXd& M, const Eigen::VectorXd& phi,
                          Eigen::VectorXd& g, double tol, std::size_t max_iter,
                          double* defect_out) {
    Eigen::VectorXd next(g.size());
    for (std::size_t it = 1; it <= max_iter; ++it) {
        next.noalias() = M * phi.cwiseProduct(g).matrix();
        next.array() += 1.0;
        const double delta = (next - g).lpNorm<Eigen::Infinity>();
        if (delta <= tol) {
            if (defect_out) *defect_out = delta;
            return it;  // g is already a fixed point to tol; keep it
        }
        g.swap(next);
    }
    throw ConvergenceError("solve_h: damping stage exceeded max_iter");
}

}  // namespace

void SolverConfig::validate() const {
    if (!(std::isfinite(x_max) && x_max > 0.0)) throw ParamError("SolverConfig: x_max must be > 0");
    if (n_grid < 201 || n_grid % 2 == 0) throw ParamError("SolverConfig: n_grid must be odd and >= 201");
    if (beta_schedule.empty()) throw ParamError("SolverConfig: beta_schedule must be non-empty");
    double prev = std::numeric_limits<double>::infinity();
    for (double b : beta_schedule) {
        if (!(b > 0.0 && b < prev))
            throw ParamError("SolverConfig: beta_schedule must be strictly decreasing and positive");
        prev = b;
    }
    if (!(fp_tol > 0.0)) throw ParamError("SolverConfig: fp_tol must be > 0");
    if (max_iter < 10) throw ParamError("SolverConfig: max_iter too small");
}

double phi_beta(double y, double beta) {
    if (y <= 0.0) return 1.0;
    if (y >= 1.0) return std::exp(-beta * y);
    // monotone cubic Hermite bridge on [0,1]: values (1, e^{-beta}),
    // slopes (0, -beta e^{-beta})
    const double e = std::exp(-beta);
    const double t = y;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 + h01 * e + h11 * (-beta * e);
}

HGrid apply_T_beta(const HGrid& g, double beta) {
    if (g.nodes.size() != g.values.size() || g.nodes.size() < 3 || g.nodes.size() % 2 == 0)
        throw ParamError("apply_T_beta: need matching nodes/values with an even interval count");
    Grid grid;
    grid.nodes = g.nodes;
    grid.dx = g.nodes[1] - g.nodes[0];
    const auto n = static_cast<Eigen::Index>(g.nodes.size());
    grid.simpson = Eigen::VectorXd::Zero(n);
    grid.simpson(0) = grid.simpson(n - 1) = grid.dx / 3.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) grid.simpson(i) = (i % 2 ? 4.0 : 2.0) * grid.dx / 3.0;

    const Eigen::MatrixXd M = kernel_matrix(grid, g.alpha);
    const Eigen::VectorXd phi = phi_vector(grid, beta);
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(g.values.data(), n);
    Eigen::VectorXd out = M * phi.cwiseProduct(v).matrix();
    out.array() += 1.0;

    HGrid r = g;
    r.values.assign(out.data(), out.data() + out.size());
    r.beta_used = beta;
    r.iterations = 1;
    r.residual = std::numeric_limits<double>::quiet_NaN();
    return r;
}

HGrid solve_h(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    if (params.eta > 6.0) throw ParamError("solve_h: eta must be <= 6");

    const Grid grid = build_grid(params.eta, params.alpha, cfg);
    check_truncation(grid, params.alpha);
    const Eigen::MatrixXd M = kernel_matrix(grid, params.alpha);
    const auto n = static_cast<Eigen::Index>(grid.nodes.size());

    Eigen::VectorXd g = Eigen::VectorXd::Constant(n, 1.0 / gauss_cdf(-params.eta));
    std::size_t total_iter = 0;

    Eigen::VectorXd prev_stage;
    const std::size_t n_stages = cfg.beta_schedule.size();
    for (std::size_t k = 0; k < n_stages; ++k) {
        if (k + 1 == n_stages && n_stages > 1) prev_stage = g;
        const Eigen::VectorXd phi = phi_vector(grid, cfg.beta_schedule[k]);
        total_iter += iterate_stage(M, phi, g, cfg.fp_tol, cfg.max_iter, nullptr);
    }

    if (n_stages > 1) {
        // Warm-start the stage at beta_{last} from beta_{prev} was done above;
        // now extrapolate the pair linearly to beta = 0.
        const double b_prev = cfg.beta_schedule[n_stages - 2];
        const double b_last = cfg.beta_schedule[n_stages - 1];
        const double w = b_last / (b_prev - b_last);
        g += w * (g - prev_stage);
    }

    // Undamped polish on the truncated domain: the kernel is strictly
    // sub-stochastic there, so the iteration converges even though the
    // sup-norm contraction constant of the damped family tends to 1.
    double defect = std::numeric_limits<double>::quiet_NaN();
    const Eigen::VectorXd phi0 = Eigen::VectorXd::Ones(n);
    total_iter += iterate_stage(M, phi0, g, cfg.fp_tol, cfg.max_iter, &defect);

    HGrid out;
    out.eta = params.eta;
    out.alpha = params.alpha;
    out.nodes = grid.nodes;
    out.values.assign(g.data(), g.data() + g.size());
    out.beta_used = cfg.beta_schedule.back();
    out.iterations = total_iter;
    out.residual = defect;
    return out;
}

double compute_H(const ModelParams& params, const SolverConfig& cfg) {
    const HGrid h = solve_h(params, cfg);
    const Grid grid = build_grid(params.eta, params.alpha, cfg);
    const std::size_t m = grid.eta_index;
    const std::size_t N = h.nodes.size() - 1;

    // Composite Simpson of h f over [eta, x_end] (N - m is even by construction).
    double acc = 0.0;
    const double dx = grid.dx;
    for (std::size_t i = m; i <= N; ++i) {
        double w = (i == m || i == N) ? 1.0 : (((i - m) % 2) ? 4.0 : 2.0);
        acc += w * h.values[i] * gauss_pdf(h.nodes[i]);
    }
    acc *= dx / 3.0;
    return acc / gauss_cdf(-params.eta);
}

GradPair fd_grad_H(double eta, const SolverConfig& cfg, double step) {
    if (!(step >= 1e-4 && step <= 1e-2)) throw ParamError("fd_grad_H: step must lie in [1e-4, 1e-2]");
    if (!(eta > step)) throw ParamError("fd_grad_H: eta must exceed step");
    const double rho = 0.5;  // H does not depend on rho
    const double H0 = compute_H({rho, 0.0, eta}, cfg);
    const double Ha1 = compute_H({rho, step, eta}, cfg);
    const double Ha2 = compute_H({rho, 2.0 * step, eta}, cfg);
    const double He_p = compute_H({rho, 0.0, eta + step}, cfg);
    const double He_m = compute_H({rho, 0.0, eta - step}, cfg);
    return GradPair{(-3.0 * H0 + 4.0 * Ha1 - Ha2) / (2.0 * step),
                    (He_p - He_m) / (2.0 * step)};
}

std::vector<ContourCell> contour_grid(const std::vector<double>& alpha_grid,
                                      const std::vector<double>& eta_grid,
                                      const SolverConfig& cfg, int workers) {
    if (alpha_grid.empty() || eta_grid.empty()) throw ParamError("contour_grid: empty grid");
    if (workers < 1) throw ParamError("contour_grid: workers must be >= 1");

    const std::size_t n_cells = alpha_grid.size() * eta_grid.size();
    std::vector<ContourCell> cells(n_cells);

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const double a = alpha_grid[idx / eta_grid.size()];
            const double e = eta_grid[idx % eta_grid.size()];
            ContourCell& c = cells[idx];
            c.alpha = a;
            c.eta = e;
            try {
                c.H = compute_H({0.5, a, e}, cfg);
                c.ok = true;
                c.status = "ok";
            } catch (const Error& err) {
                c.H = std::numeric_limits<double>::quiet_NaN();
                c.ok = false;
                c.status = err.what();
            }
        }
    };

    if (workers == 1 || n_cells < 2 * static_cast<std::size_t>(workers)) {
        run_range(0, n_cells);
    } else {
        std::vector<std::thread> pool;
        const std::size_t w = static_cast<std::size_t>(workers);
        for (std::size_t c = 0; c < w; ++c)
            pool.emplace_back(run_range, c * n_cells / w, (c + 1) * n_cells / w);
        for (auto& th : pool) th.join();
    }
    return cells;
}

}  // namespace arhyst
