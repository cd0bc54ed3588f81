#include "arhyst/gaussian.hpp"

#include <cmath>

namespace arhyst {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kSqrt2 = 1.41421356237309504880168872420970;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481105;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Acklam's rational approximation to the normal quantile (|rel err| < 1.2e-9),
// used as the seed for one Halley step against the erfc-based cdf.
double inv_cdf_seed(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

double gauss_pdf(double x) {
    require_finite(x, "gauss_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double gauss_cdf(double x) {
    require_finite(x, "gauss_cdf");
    return 0.5 * std::erfc(-x / kSqrt2);
}

double gauss_inv_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("gauss_inv_cdf: p must lie in (0,1)");
    double x = inv_cdf_seed(p);
    // Halley step: e = F(x) - p, u = e / f(x), x <- x - u / (1 + x u / 2).
    const double e = 0.5 * std::erfc(-x / kSqrt2) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

TruncatedMoments trunc_moments(double u) {
    require_finite(u, "trunc_moments");
    const double fu = gauss_pdf(u);
    const double tail = gauss_cdf(-u);  // 1 - F(u) without cancellation
    return TruncatedMoments{u, fu, u * fu, u * fu + tail};
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed),
      id_(stream_id),
      key_(mix64(master_seed + kGolden) ^ mix64(stream_id * 0xD2B74407B1CE6E93ull + 0x8CB92BA72F3D8DD7ull)) {}

std::uint64_t RngStream::next_u64() {
    counter_ += kGolden;
    return mix64(key_ + counter_);
}

double RngStream::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

RngStream RngStream::child(std::uint64_t k) const {
    return RngStream(master_, mix64(id_ + kGolden * (k + 1)));
}

double sample_std_normal(RngStream& rng) {
    return gauss_inv_cdf(rng.next_uniform());
}

double sample_truncated_above(double u, RngStream& rng) {
    require_finite(u, "sample_truncated_above");
    if (u > 8.0)
        throw UnsupportedRegionError("sample_truncated_above: u > 8 underflows the tail cdf");
    const double tail = gauss_cdf(-u);
    // P(X > x) = F(-x); solve F(-x) = U * F(-u) so the draw is exact on the tail.
    return -gauss_inv_cdf(tail * rng.next_uniform());
}

}  // namespace arhyst
