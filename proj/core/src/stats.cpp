#include "collimator/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "collimator/errors.hpp"

namespace collimator::stats {

double se_skewness(std::size_t count) {
  if (count < 3) {
    throw InsufficientData("SE of skewness needs at least 3 samples");
  }
  const auto n = static_cast<double>(count);
  return std::sqrt(6.0 * n * (n - 1.0) / ((n - 2.0) * (n + 1.0) * (n + 3.0)));
}

double se_kurtosis(std::size_t count) {
  if (count < 4) {
    throw InsufficientData("SE of kurtosis needs at least 4 samples");
  }
  const auto n = static_cast<double>(count);
  return std::sqrt(24.0 * n * (n - 1.0) * (n - 1.0) /
                   ((n - 3.0) * (n - 2.0) * (n + 3.0) * (n + 5.0)));
}

StatsSummary describe(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InsufficientData("descriptive statistics need at least 2 samples");
  }
  StatsSummary s;
  s.n = samples.size();
  const auto n = static_cast<double>(s.n);
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  // Accumulated rounding can push the mean a hair outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : samples) {
    const double d = x - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  s.sd = std::sqrt(m2 / (n - 1.0));
  m2 /= n;
  m3 /= n;
  m4 /= n;

  s.degenerate = s.min == s.max;
  if (s.n >= 3) {
    s.skewness = s.degenerate ? 0.0
                              : m3 / std::pow(m2, 1.5) * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  }
  if (s.n >= 4) {
    if (s.degenerate) {
      s.kurtosis = 0.0;
    } else {
      const double g2 = m4 / (m2 * m2) - 3.0;
      s.kurtosis = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
    }
    s.se_skewness = se_skewness(s.n);
    s.se_kurtosis = se_kurtosis(s.n);
  }
  return s;
}

std::string_view to_string(Alternative alternative) {
  return alternative == Alternative::Less ? "less" : "greater";
}

std::string_view to_string(MwMethod method) {
  return method == MwMethod::Exact ? "exact" : "normal-approximation";
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

struct Ranked {
  /// 2 * mid-rank, so tied ranks stay integral.
  std::vector<std::uint64_t> doubled_ranks;
  /// sum over tie groups of t^3 - t.
  double tie_term = 0.0;
};

Ranked rank_pooled(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  Ranked r;
  r.doubled_ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) {
      ++j;
    }
    // 1-based positions i+1 .. j+1 share the mid-rank (i + j + 2) / 2.
    const std::uint64_t doubled = i + j + 2;
    for (std::size_t k = i; k <= j; ++k) {
      r.doubled_ranks[order[k]] = doubled;
    }
    const auto t = static_cast<double>(j - i + 1);
    r.tie_term += t * t * t - t;
    i = j + 1;
  }
  return r;
}

// Counts, for every achievable sum, the subsets of `size` items drawn from
// `values`. counts[s] is the number of subsets whose values sum to s.
std::vector<double> subset_sum_counts(std::span<const std::uint64_t> values, std::size_t size) {
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.rbegin(), sorted.rend());
  const std::uint64_t max_sum = std::accumulate(sorted.begin(), sorted.begin() + size,
                                                std::uint64_t{0});
  const std::size_t width = max_sum + 1;
  // table[k * width + s]: subsets of k items with sum s. Counts stay below
  // C(N, size), exactly representable in a double for the sizes used here.
  std::vector<double> table((size + 1) * width, 0.0);
  table[0] = 1.0;
  std::size_t seen = 0;
  for (std::uint64_t v : values) {
    ++seen;
    const std::size_t top = std::min(seen, size);
    for (std::size_t k = top; k >= 1; --k) {
      double* dst = &table[k * width];
      const double* src = &table[(k - 1) * width];
      for (std::size_t s = max_sum; s >= v; --s) {
        dst[s] += src[s - v];
        if (s == v) break;
      }
    }
  }
  return {table.begin() + static_cast<std::ptrdiff_t>(size * width), table.end()};
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 Alternative alternative, const MannWhitneyOptions& options) {
  if (a.empty() || b.empty()) {
    throw InsufficientData("Mann-Whitney U needs two non-empty samples");
  }
  MannWhitneyResult res;
  res.alternative = alternative;
  res.n_a = a.size();
  res.n_b = b.size();
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const Ranked ranked = rank_pooled(pooled);

  std::uint64_t doubled_sum_a = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    doubled_sum_a += ranked.doubled_ranks[i];
  }
  res.w = 0.5 * static_cast<double>(doubled_sum_a);
  res.u = res.w - na * (na + 1.0) / 2.0;
  res.u_other = na * nb - res.u;

  res.method = options.force_method.value_or(
      a.size() * b.size() <= options.exact_max_product ? MwMethod::Exact
                                                       : MwMethod::NormalApproximation);

  if (res.method == MwMethod::Exact) {
    // Enumerate over the smaller sample; its rank sum determines the other's.
    const bool use_a = a.size() <= b.size();
    const std::size_t k = use_a ? a.size() : b.size();
    const std::vector<double> counts = subset_sum_counts(ranked.doubled_ranks, k);
    const std::uint64_t doubled_total =
        std::accumulate(ranked.doubled_ranks.begin(), ranked.doubled_ranks.end(),
                        std::uint64_t{0});
    const std::uint64_t observed = use_a ? doubled_sum_a : doubled_total - doubled_sum_a;
    // Small a-sums correspond to large b-sums.
    const bool want_low = (alternative == Alternative::Less) == use_a;
    double tail = 0.0;
    double total = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      total += counts[s];
      if (want_low ? s <= observed : s >= observed) {
        tail += counts[s];
      }
    }
    res.p = tail / total;
  } else {
    const double n = na + nb;
    const double mu = na * nb / 2.0;
    const double var = na * nb / 12.0 * ((n + 1.0) - ranked.tie_term / (n * (n - 1.0)));
    if (!(var > 0.0)) {
      res.z = 0.0;
      res.p = 1.0;
    } else {
      const double sd = std::sqrt(var);
      if (alternative == Alternative::Less) {
        res.z = (res.u - mu + 0.5) / sd;
        res.p = normal_cdf(*res.z);
      } else {
        res.z = (res.u - mu - 0.5) / sd;
        res.p = normal_cdf(-*res.z);
      }
    }
  }
  // Deep normal tails underflow; p is reported as at least DBL_MIN.
  res.p = std::clamp(res.p, std::numeric_limits<double>::min(), 1.0);
  return res;
}

}  // namespace collimator::stats
