#include "collimator/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "collimator/trial_csv.hpp"

namespace collimator {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Pem: return "pem";
    case Metric::PeX: return "pe_x";
    case Metric::PeY: return "pe_y";
    case Metric::PeZ: return "pe_z";
    case Metric::Aem: return "aem";
    case Metric::AeX: return "ae_x";
    case Metric::AeY: return "ae_y";
    case Metric::AeZ: return "ae_z";
    case Metric::Swing: return "swing";
    case Metric::Tt: return "tt";
  }
  return "?";
}

double metric_value(const TrialRecord& r, Metric metric) {
  switch (metric) {
    case Metric::Pem: return r.pem;
    case Metric::PeX: return r.pe_x;
    case Metric::PeY: return r.pe_y;
    case Metric::PeZ: return r.pe_z;
    case Metric::Aem: return r.aem;
    case Metric::AeX: return r.ae_x;
    case Metric::AeY: return r.ae_y;
    case Metric::AeZ: return r.ae_z;
    case Metric::Swing: return r.swing_deg;
    case Metric::Tt: return r.tt_ms;
  }
  return 0.0;
}

namespace {

std::vector<double> column(std::span<const TrialRecord> records, Metric metric, Widget widget,
                           std::optional<TargetGroup> group) {
  std::vector<double> out;
  for (const TrialRecord& r : records) {
    if (r.group == TargetGroup::Training || r.widget != widget) continue;
    if (group && r.group != *group) continue;
    out.push_back(metric_value(r, metric));
  }
  return out;
}

}  // namespace

AnalysisReport analyze(std::span<const TrialRecord> records, Grouping grouping,
                       stats::Alternative alternative) {
  AnalysisReport report;
  report.records = static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(),
      [](const TrialRecord& r) { return r.group != TargetGroup::Training; }));
  report.grouping = grouping;
  report.alternative = alternative;

  std::vector<std::optional<TargetGroup>> groups;
  if (grouping == Grouping::Anatomy) {
    groups = {TargetGroup::Mandible, TargetGroup::Maxilla};
  } else {
    groups = {std::nullopt};
  }

  for (Metric metric : kMetrics) {
    for (const auto& group : groups) {
      const std::vector<double> acw = column(records, metric, Widget::ACW, group);
      const std::vector<double> gsw = column(records, metric, Widget::GSW, group);
      for (Widget widget : {Widget::ACW, Widget::GSW}) {
        const std::vector<double>& xs = widget == Widget::ACW ? acw : gsw;
        SummaryCell cell{metric, group, widget, xs.size(), std::nullopt};
        if (xs.size() >= 2) {
          cell.summary = stats::describe(xs);
        }
        report.cells.push_back(cell);
      }
      TestRow row{metric, group, std::nullopt};
      if (!acw.empty() && !gsw.empty()) {
        row.result = stats::mann_whitney_u(acw, gsw, alternative);
      }
      report.tests.push_back(row);
    }
  }
  return report;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::string group_label(const std::optional<TargetGroup>& g) {
  return g ? std::string(to_string(*g)) : "all";
}

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

const SummaryCell* find_cell(const AnalysisReport& report, Metric metric,
                             const std::optional<TargetGroup>& group, Widget widget) {
  for (const SummaryCell& c : report.cells) {
    if (c.metric == metric && c.group == group && c.widget == widget) return &c;
  }
  return nullptr;
}

void write_table(std::ostream& out, const AnalysisReport& report, std::string_view title,
                 std::span<const Metric> metrics, const std::optional<TargetGroup>& group) {
  constexpr int kLabel = 24;
  constexpr int kCol = 11;
  char buf[128];

  out << title;
  if (group) out << " (" << to_string(*group) << ")";
  out << "\n";

  std::snprintf(buf, sizeof buf, "%-*s", kLabel, "Widget Type");
  out << buf;
  for (Metric m : metrics) {
    std::snprintf(buf, sizeof buf, "%*s%*s", kCol, std::string(to_string(m)).c_str(), kCol, "");
    out << buf;
  }
  out << "\n";
  std::snprintf(buf, sizeof buf, "%-*s", kLabel, "");
  out << buf;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%*s%*s", kCol, "ACW", kCol, "GSW");
    out << buf;
  }
  out << "\n";

  using Getter = std::string (*)(const SummaryCell&);
  struct Row {
    const char* label;
    Getter get;
  };
  static const Row rows[] = {
      {"Valid", [](const SummaryCell& c) { return std::to_string(c.n); }},
      {"Mean", [](const SummaryCell& c) { return c.summary ? fixed(c.summary->mean) : "-"; }},
      {"Std. Deviation",
       [](const SummaryCell& c) { return c.summary ? fixed(c.summary->sd) : "-"; }},
      {"Skewness",
       [](const SummaryCell& c) {
         return c.summary && c.summary->skewness ? fixed(*c.summary->skewness) : "-";
       }},
      {"Std. Error Skewness",
       [](const SummaryCell& c) {
         return c.summary && c.summary->se_skewness ? fixed(*c.summary->se_skewness) : "-";
       }},
      {"Kurtosis",
       [](const SummaryCell& c) {
         return c.summary && c.summary->kurtosis ? fixed(*c.summary->kurtosis) : "-";
       }},
      {"Std. Error of Kurtosis",
       [](const SummaryCell& c) {
         return c.summary && c.summary->se_kurtosis ? fixed(*c.summary->se_kurtosis) : "-";
       }},
      {"Minimum", [](const SummaryCell& c) { return c.summary ? fixed(c.summary->min) : "-"; }},
      {"Maximum", [](const SummaryCell& c) { return c.summary ? fixed(c.summary->max) : "-"; }},
  };
  for (const Row& row : rows) {
    std::snprintf(buf, sizeof buf, "%-*s", kLabel, row.label);
    out << buf;
    for (Metric m : metrics) {
      for (Widget w : {Widget::ACW, Widget::GSW}) {
        const SummaryCell* c = find_cell(report, m, group, w);
        const std::string text = c ? row.get(*c) : "-";
        std::snprintf(buf, sizeof buf, "%*s", kCol, text.c_str());
        out << buf;
      }
    }
    out << "\n";
  }
  out << "\n";
}

}  // namespace

void write_summary_csv(std::ostream& out, const AnalysisReport& report) {
  out << "metric,group,widget,n,mean,sd,skewness,se_skewness,kurtosis,se_kurtosis,min,max\n";
  for (const SummaryCell& c : report.cells) {
    out << to_string(c.metric) << ',' << group_label(c.group) << ',' << to_string(c.widget)
        << ',' << c.n;
    if (c.summary) {
      const auto& s = *c.summary;
      out << ',' << format_double(s.mean) << ',' << format_double(s.sd) << ',' << opt(s.skewness)
          << ',' << opt(s.se_skewness) << ',' << opt(s.kurtosis) << ',' << opt(s.se_kurtosis)
          << ',' << format_double(s.min) << ',' << format_double(s.max);
    } else {
      out << ",,,,,,,,";
    }
    out << '\n';
  }
}

void write_tests_csv(std::ostream& out, const AnalysisReport& report) {
  out << "metric,group,n_acw,n_gsw,u,w,z,p,method,alternative\n";
  for (const TestRow& t : report.tests) {
    out << to_string(t.metric) << ',' << group_label(t.group);
    if (t.result) {
      const auto& r = *t.result;
      out << ',' << r.n_a << ',' << r.n_b << ',' << format_double(r.u) << ','
          << format_double(r.w) << ',' << opt(r.z) << ',' << format_double(r.p) << ','
          << to_string(r.method) << ',' << to_string(r.alternative);
    } else {
      out << ",,,,,,,insufficient,";
    }
    out << '\n';
  }
}

void write_text_report(std::ostream& out, const AnalysisReport& report) {
  static constexpr std::array kPositional{Metric::Pem, Metric::PeX, Metric::PeY, Metric::PeZ};
  static constexpr std::array kAngular{Metric::Aem, Metric::AeX, Metric::AeY, Metric::AeZ,
                                       Metric::Swing};
  static constexpr std::array kTime{Metric::Tt};

  std::vector<std::optional<TargetGroup>> groups;
  if (report.grouping == Grouping::Anatomy) {
    groups = {TargetGroup::Mandible, TargetGroup::Maxilla};
  } else {
    groups = {std::nullopt};
  }

  out << "Records analysed: " << report.records << "\n\n";
  for (const auto& g : groups) {
    write_table(out, report, "Positional error (mm)", kPositional, g);
    write_table(out, report, "Angular error (deg)", kAngular, g);
    write_table(out, report, "Task time (ms)", kTime, g);
  }

  out << "Mann-Whitney U, one-tailed, alternative: ACW "
      << (report.alternative == stats::Alternative::Less ? "<" : ">") << " GSW\n";
  char buf[256];
  for (const TestRow& t : report.tests) {
    const std::string label =
        std::string(to_string(t.metric)) + (t.group ? " [" + group_label(t.group) + "]" : "");
    if (!t.result) {
      std::snprintf(buf, sizeof buf, "  %-18s insufficient data\n", label.c_str());
    } else {
      const auto& r = *t.result;
      std::snprintf(buf, sizeof buf, "  %-18s U = %.1f  W = %.1f  p = %.4g  (%s, n = %zu vs %zu)\n",
                    label.c_str(), r.u, r.w, r.p, std::string(to_string(r.method)).c_str(),
                    r.n_a, r.n_b);
    }
    out << buf;
  }
  out << "\nNotes: Shapiro-Wilk and Levene tests are not computed. Tests treat the two\n"
         "widgets as independent samples even though every participant used both.\n";
}

}  // namespace collimator
