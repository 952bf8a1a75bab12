#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcnres/common.hpp"
#include "pcnres/rng.hpp"

// Discrete power-law fitting: P(x) = x^-alpha / zeta(alpha, x_min), x >= x_min.
namespace pcnres {

struct FitResult {
    double alpha = 0.0;
    std::int64_t x_min = 0;
    double ks_distance = 0.0;
    std::size_t tail_count = 0;
};

struct GofResult {
    double p_value = 0.0;
    std::size_t synthetic_runs = 0;
    std::size_t exceed_count = 0;  // synthetic KS >= empirical KS
    bool reject = false;           // p_value <= 0.1
    std::optional<std::string> warning;
};

inline constexpr double kAlphaLow = 1.0 + 1e-6;
inline constexpr double kAlphaHigh = 6.0;
inline constexpr double kAlphaTol = 1e-4;
inline constexpr double kRejectThreshold = 0.1;

// Maximum-likelihood alpha for a fixed x_min (golden section on (1, 6]).
double fit_alpha(std::span<const std::int64_t> sorted_tail, std::int64_t x_min);

// Sup over integers >= x_min of |empirical CDF - model CDF| for the tail.
double ks_distance(std::span<const std::int64_t> sorted_tail, double alpha, std::int64_t x_min);

// P(X <= x) under the fitted law.
double power_law_cdf(std::int64_t x, double alpha, std::int64_t x_min);

// Scans candidate x_min over the distinct observed values and keeps the one
// with the smallest KS distance (ties: smaller x_min). With >= 500
// observations the tail must keep >= 50 of them. Throws FitError for fewer
// than 10 observations or when no candidate has a tail of at least two
// distinct values.
FitResult fit_power_law(std::span<const std::int64_t> data);

// Semi-parametric bootstrap: values below x_min are resampled from the data,
// tail values drawn from the fitted law; each synthetic set is refitted.
// Replicate r uses derive_seed(seed, r).
GofResult goodness_of_fit(std::span<const std::int64_t> data, const FitResult& fit, std::size_t synthetic_runs,
                          std::uint64_t seed, Exec exec = Exec::parallel);

// Exact inverse-CDF sampler for the discrete law.
class PowerLawSampler {
public:
    PowerLawSampler(double alpha, std::int64_t x_min);
    std::int64_t operator()(Rng& rng) const;

private:
    std::int64_t search_tail(double u) const;

    double alpha_;
    std::int64_t x_min_;
    double norm_;              // zeta(alpha, x_min)
    std::vector<double> cdf_;  // cdf_[i] = P(X <= x_min + i)
};

struct CcdfRow {
    std::int64_t k = 0;
    double empirical = 0.0;        // P(K >= k)
    std::optional<double> fitted;  // only for k >= x_min
};

// Empirical CCDF at each distinct value, with the fitted tail scaled by the
// tail fraction.
std::vector<CcdfRow> ccdf_table(std::span<const std::int64_t> data, const FitResult& fit);

}  // namespace pcnres
