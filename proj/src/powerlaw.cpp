#include "pcnres/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcnres/zeta.hpp"

namespace pcnres {

namespace {

constexpr std::size_t kLargeSample = 500;
constexpr std::size_t kLargeSampleMinTail = 50;
constexpr std::int64_t kDirectSumGap = 64;
constexpr std::int64_t kSampleCap = std::int64_t{1} << 53;

// Sorted sample split into distinct values; first[j] is the index of the
// first occurrence of values[j], with first.back() == n as a sentinel.
struct Distinct {
    std::vector<std::int64_t> values;
    std::vector<std::size_t> first;
    std::vector<double> suffix_log;  // sum of log(x) over data[first[j]..n)
};

Distinct split(std::span<const std::int64_t> sorted) {
    Distinct d;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i] != sorted[i - 1]) {
            d.values.push_back(sorted[i]);
            d.first.push_back(i);
        }
    }
    d.first.push_back(sorted.size());
    d.suffix_log.assign(d.values.size() + 1, 0.0);
    for (std::size_t j = d.values.size(); j-- > 0;) {
        const auto count = static_cast<double>(d.first[j + 1] - d.first[j]);
        d.suffix_log[j] = d.suffix_log[j + 1] + count * std::log(static_cast<double>(d.values[j]));
    }
    return d;
}

double golden_alpha(double count, double sum_log, std::int64_t x_min) {
    const auto q = static_cast<double>(x_min);
    auto loglik = [&](double a) { return -count * std::log(hurwitz_zeta(a, q)) - a * sum_log; };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = kAlphaLow;
    double hi = kAlphaHigh;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = loglik(x1);
    double f2 = loglik(x2);
    while (hi - lo > kAlphaTol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = loglik(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = loglik(x1);
        }
    }
    return 0.5 * (lo + hi);
}

// KS distance of the tail starting at distinct index `start`.
double ks_from(const Distinct& d, std::size_t start, double alpha) {
    const auto x_min = d.values[start];
    const double z = hurwitz_zeta(alpha, static_cast<double>(x_min));
    const auto base = d.first[start];
    const auto count = static_cast<double>(d.first.back() - base);

    double partial = 0.0;  // sum_{k = x_min}^{pos} k^-alpha
    std::int64_t pos = x_min - 1;
    auto advance = [&](std::int64_t target) {
        if (target - pos <= kDirectSumGap) {
            for (auto k = pos + 1; k <= target; ++k) partial += std::exp(-alpha * std::log(static_cast<double>(k)));
        } else {
            partial = z - hurwitz_zeta(alpha, static_cast<double>(target + 1));
        }
        pos = target;
    };

    double ks = 0.0;
    const auto m = d.values.size();
    for (auto j = start; j < m; ++j) {
        advance(d.values[j]);
        const double empirical = static_cast<double>(d.first[j + 1] - base) / count;
        ks = std::max(ks, std::abs(empirical - partial / z));
        // The model keeps rising until just before the next observed value.
        if (j + 1 < m && d.values[j + 1] - 1 > d.values[j]) {
            advance(d.values[j + 1] - 1);
            ks = std::max(ks, std::abs(empirical - partial / z));
        }
    }
    return std::min(ks, 1.0);
}

FitResult fit_sorted(std::span<const std::int64_t> sorted) {
    if (sorted.empty()) throw FitError("power-law fit of an empty sample");
    if (sorted.front() < 1) throw FitError("power-law fit needs values >= 1");
    const auto d = split(sorted);
    const auto n = sorted.size();
    const std::size_t min_tail = n >= kLargeSample ? kLargeSampleMinTail : 2;

    std::optional<FitResult> best;
    // The last distinct value leaves a tail with no variation.
    for (std::size_t j = 0; j + 1 < d.values.size(); ++j) {
        const auto count = n - d.first[j];
        if (count < min_tail) break;
        const double alpha = golden_alpha(static_cast<double>(count), d.suffix_log[j], d.values[j]);
        const double ks = ks_from(d, j, alpha);
        if (!best || ks < best->ks_distance) best = FitResult{alpha, d.values[j], ks, count};
    }
    if (!best) throw FitError("power-law fit: no x_min candidate leaves a tail with two distinct values");
    return *best;
}

}  // namespace

double fit_alpha(std::span<const std::int64_t> sorted_tail, std::int64_t x_min) {
    double sum_log = 0.0;
    std::size_t count = 0;
    for (auto x : sorted_tail) {
        if (x < x_min) continue;
        sum_log += std::log(static_cast<double>(x));
        ++count;
    }
    if (count == 0) throw FitError("fit_alpha: empty tail");
    return golden_alpha(static_cast<double>(count), sum_log, x_min);
}

double ks_distance(std::span<const std::int64_t> sorted_tail, double alpha, std::int64_t x_min) {
    std::vector<std::int64_t> tail;
    for (auto x : sorted_tail)
        if (x >= x_min) tail.push_back(x);
    if (tail.empty()) throw FitError("ks_distance: empty tail");
    std::sort(tail.begin(), tail.end());
    auto d = split(tail);
    // Pad with x_min so the model CDF is compared from x_min upwards.
    if (d.values.front() != x_min) {
        d.values.insert(d.values.begin(), x_min);
        d.first.insert(d.first.begin(), 0);
        d.suffix_log.insert(d.suffix_log.begin(), d.suffix_log.front());
    }
    return ks_from(d, 0, alpha);
}

double power_law_cdf(std::int64_t x, double alpha, std::int64_t x_min) {
    if (x < x_min) return 0.0;
    return 1.0 - hurwitz_zeta(alpha, static_cast<double>(x + 1)) / hurwitz_zeta(alpha, static_cast<double>(x_min));
}

FitResult fit_power_law(std::span<const std::int64_t> data) {
    if (data.size() < 10)
        throw FitError("power-law fit needs at least 10 observations, got " + std::to_string(data.size()));
    std::vector<std::int64_t> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    return fit_sorted(sorted);
}

GofResult goodness_of_fit(std::span<const std::int64_t> data, const FitResult& fit, std::size_t synthetic_runs,
                          std::uint64_t seed, Exec exec) {
    if (synthetic_runs == 0) throw Error("goodness of fit needs at least one synthetic run");
    std::vector<std::int64_t> body;
    for (auto x : data)
        if (x < fit.x_min) body.push_back(x);
    std::sort(body.begin(), body.end());
    const auto n = data.size();
    const double tail_share = static_cast<double>(n - body.size()) / static_cast<double>(n);
    const PowerLawSampler sampler(fit.alpha, fit.x_min);

    std::size_t exceed = 0;
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic, 1) reduction(+ : exceed)
    for (std::size_t r = 0; r < synthetic_runs; ++r) {
        Rng rng(derive_seed(seed, r));
        std::vector<std::int64_t> synthetic(n);
        for (auto& x : synthetic) {
            if (body.empty() || rng.unit() < tail_share)
                x = sampler(rng);
            else
                x = body[rng.below(body.size())];
        }
        std::sort(synthetic.begin(), synthetic.end());
        try {
            if (fit_sorted(synthetic).ks_distance >= fit.ks_distance) ++exceed;
        } catch (const FitError&) {
            ++exceed;  // an unfittable replicate counts against the model
        }
    }

    GofResult out;
    out.synthetic_runs = synthetic_runs;
    out.exceed_count = exceed;
    out.p_value = static_cast<double>(exceed) / static_cast<double>(synthetic_runs);
    out.reject = out.p_value <= kRejectThreshold;
    if (synthetic_runs < 100)
        out.warning = "only " + std::to_string(synthetic_runs) + " synthetic runs; p-value resolution is coarse";
    return out;
}

PowerLawSampler::PowerLawSampler(double alpha, std::int64_t x_min)
    : alpha_(alpha), x_min_(x_min), norm_(hurwitz_zeta(alpha, static_cast<double>(x_min))) {
    if (!(alpha > 1.0) || x_min < 1) throw Error("power-law sampler needs alpha > 1 and x_min >= 1");
    constexpr std::size_t kTable = 1 << 16;
    cdf_.reserve(kTable);
    double partial = 0.0;
    for (std::size_t i = 0; i < kTable; ++i) {
        partial += std::exp(-alpha * std::log(static_cast<double>(x_min + static_cast<std::int64_t>(i))));
        cdf_.push_back(partial / norm_);
        if (1.0 - cdf_.back() < 1e-13) break;
    }
}

std::int64_t PowerLawSampler::operator()(Rng& rng) const {
    const double u = rng.unit();
    if (u < cdf_.back()) {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return x_min_ + static_cast<std::int64_t>(it - cdf_.begin());
    }
    return search_tail(u);
}

std::int64_t PowerLawSampler::search_tail(double u) const {
    auto cdf = [&](std::int64_t x) { return 1.0 - hurwitz_zeta(alpha_, static_cast<double>(x + 1)) / norm_; };
    std::int64_t lo = x_min_ + static_cast<std::int64_t>(cdf_.size()) - 1;  // cdf(lo) <= u
    std::int64_t hi = lo;
    do {
        lo = hi;
        hi = std::min(hi * 2, kSampleCap);
    } while (hi < kSampleCap && cdf(hi) <= u);
    if (cdf(hi) <= u) return hi;
    while (hi - lo > 1) {
        const auto mid = lo + (hi - lo) / 2;
        if (cdf(mid) > u)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<CcdfRow> ccdf_table(std::span<const std::int64_t> data, const FitResult& fit) {
    std::vector<std::int64_t> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CcdfRow> rows;
    if (sorted.empty()) return rows;
    const auto n = static_cast<double>(sorted.size());
    const double tail_share = static_cast<double>(fit.tail_count) / n;
    const double z = hurwitz_zeta(fit.alpha, static_cast<double>(fit.x_min));
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        CcdfRow row{sorted[i], static_cast<double>(sorted.size() - i) / n, std::nullopt};
        if (sorted[i] >= fit.x_min)
            row.fitted = tail_share * hurwitz_zeta(fit.alpha, static_cast<double>(sorted[i])) / z;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pcnres
