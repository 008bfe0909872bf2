#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace collimator::stats {

/// Descriptive statistics in the row layout of the study's result tables.
struct StatsSummary {
  std::size_t n = 0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1).
  double sd = 0.0;
  /// Adjusted Fisher-Pearson G1; needs n >= 3.
  std::optional<double> skewness;
  std::optional<double> se_skewness;
  /// Excess kurtosis G2; needs n >= 4.
  std::optional<double> kurtosis;
  std::optional<double> se_kurtosis;
  double min = 0.0;
  double max = 0.0;
  /// All samples equal: skewness and kurtosis are reported as 0.
  bool degenerate = false;
};

/// sqrt(6n(n-1) / ((n-2)(n+1)(n+3))); requires n >= 3.
double se_skewness(std::size_t n);
/// sqrt(24n(n-1)^2 / ((n-3)(n-2)(n+3)(n+5))); requires n >= 4.
double se_kurtosis(std::size_t n);

/// Throws InsufficientData when fewer than 2 samples.
StatsSummary describe(std::span<const double> samples);

/// Direction of the one-tailed test, stated for the first sample.
enum class Alternative { Less, Greater };

enum class MwMethod { Exact, NormalApproximation };

std::string_view to_string(Alternative alternative);
std::string_view to_string(MwMethod method);

struct MannWhitneyResult {
  /// U of the first sample: pairs (a_i, b_j) with a_i > b_j, ties counting 1/2.
  double u = 0.0;
  /// U of the second sample; u + u_other == n_a * n_b.
  double u_other = 0.0;
  /// Wilcoxon rank sum of the first sample (mid-ranks).
  double w = 0.0;
  double p = 1.0;
  /// Only set for the normal approximation.
  std::optional<double> z;
  MwMethod method = MwMethod::Exact;
  Alternative alternative = Alternative::Less;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

struct MannWhitneyOptions {
  /// Exact permutation p-value when n_a * n_b is at most this.
  std::size_t exact_max_product = 400;
  /// Overrides the automatic choice.
  std::optional<MwMethod> force_method;
};

/// One-tailed Mann-Whitney U test of `a` against `b`.
///
/// Exact: distribution of the first sample's rank sum over every way of
/// choosing its positions among the pooled mid-ranks, so ties are handled
/// by the permutation distribution of the observed values. Approximation:
/// normal with tie-corrected variance and a 0.5 continuity correction.
///
/// Throws InsufficientData if either sample is empty.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 Alternative alternative, const MannWhitneyOptions& options = {});

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace collimator::stats
