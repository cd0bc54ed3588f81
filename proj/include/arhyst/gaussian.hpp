#pragma once

#include <cstdint>

#include "arhyst/errors.hpp"

// Standard-normal primitives and the deterministic, splittable random-number
// streams used by every sampling routine in the library.

namespace arhyst {

// Density f(x) = e^{-x^2/2} / sqrt(2*pi).
double gauss_pdf(double x);

// Distribution function F(x), evaluated through erfc so that both tails keep
// full absolute accuracy (downstream formulas divide by F(-eta)^2).
double gauss_cdf(double x);

// Inverse of gauss_cdf on (0,1); |F(result) - p| <= 1e-10 (in practice the
// refinement step leaves it near machine precision).
double gauss_inv_cdf(double p);

// Closed upper-tail moments of the standard normal over [u, inf):
//   mean_part = int x f dx    = f(u)
//   x2m1_part = int (x^2-1) f = u f(u)
//   x2_part   = int x^2 f     = u f(u) + 1 - F(u)
struct TruncatedMoments {
    double lower_bound;
    double mean_part;
    double x2m1_part;
    double x2_part;
};

TruncatedMoments trunc_moments(double u);

// Counter-based random stream: draw i of stream (m, s) is a pure function of
// (m, s, i), so replicated runs and any parallel schedule that assigns whole
// streams to tasks produce identical output. Streams are single-owner; to run
// work in parallel, derive one child stream per task instead of sharing.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double next_uniform();  // strictly inside (0,1)

    // Independent stream derived from this one; pure in (stream_id, k).
    RngStream child(std::uint64_t k) const;

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return id_; }

  private:
    std::uint64_t master_;
    std::uint64_t id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// One N(0,1) draw; consumes exactly one uniform.
double sample_std_normal(RngStream& rng);

// One draw of X | X > u for X ~ N(0,1), via the inverse cdf on the tail, so
// it also consumes exactly one uniform. Requires u <= 8 (deeper tails
// underflow the cdf).
double sample_truncated_above(double u, RngStream& rng);

}  // namespace arhyst
