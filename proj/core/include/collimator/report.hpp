#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "collimator/session.hpp"
#include "collimator/stats.hpp"

namespace collimator {

enum class Metric { Pem, PeX, PeY, PeZ, Aem, AeX, AeY, AeZ, Swing, Tt };

inline constexpr std::array<Metric, 10> kMetrics{Metric::Pem, Metric::PeX, Metric::PeY,
                                                 Metric::PeZ, Metric::Aem, Metric::AeX,
                                                 Metric::AeY, Metric::AeZ, Metric::Swing,
                                                 Metric::Tt};

std::string_view to_string(Metric metric);
double metric_value(const TrialRecord& record, Metric metric);

enum class Grouping { None, Anatomy };

struct SummaryCell {
  Metric metric = Metric::Pem;
  /// Set when grouped by anatomy.
  std::optional<TargetGroup> group;
  Widget widget = Widget::ACW;
  std::size_t n = 0;
  /// Empty when the cell has fewer than 2 records.
  std::optional<stats::StatsSummary> summary;
};

struct TestRow {
  Metric metric = Metric::Pem;
  std::optional<TargetGroup> group;
  /// Empty when either widget has no records.
  std::optional<stats::MannWhitneyResult> result;
};

struct AnalysisReport {
  std::size_t records = 0;
  Grouping grouping = Grouping::None;
  stats::Alternative alternative = stats::Alternative::Less;
  std::vector<SummaryCell> cells;
  std::vector<TestRow> tests;
};

/// Per metric and widget descriptive statistics plus one ACW-vs-GSW
/// Mann-Whitney test per metric (and per anatomy group when grouped).
/// `alternative` is stated for ACW relative to GSW. Training records are
/// ignored; the caller applies drop_first_trials beforehand.
AnalysisReport analyze(std::span<const TrialRecord> records, Grouping grouping = Grouping::None,
                       stats::Alternative alternative = stats::Alternative::Less);

void write_summary_csv(std::ostream& out, const AnalysisReport& report);
void write_tests_csv(std::ostream& out, const AnalysisReport& report);
/// Plain-text tables: positional error, angular error, task time, then the tests.
void write_text_report(std::ostream& out, const AnalysisReport& report);

}  // namespace collimator
