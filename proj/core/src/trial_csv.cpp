#include "collimator/trial_csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "collimator/errors.hpp"

namespace collimator {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw ParseError("cannot format number");
  }
  return std::string(buf.data(), end);
}

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

class RowParser {
 public:
  RowParser(std::vector<std::string_view> fields, std::size_t line)
      : fields_(std::move(fields)), line_(line) {}

  std::size_t size() const { return fields_.size(); }
  std::string_view text(std::size_t i) const { return fields_.at(i); }

  double number(std::size_t i) const {
    const std::string_view f = text(i);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size()) {
      fail("bad number '" + std::string(f) + "'");
    }
    return v;
  }

  long long integer(std::size_t i) const {
    const std::string_view f = text(i);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size()) {
      fail("bad integer '" + std::string(f) + "'");
    }
    return v;
  }

  bool boolean(std::size_t i) const {
    const std::string_view f = text(i);
    if (f == "true" || f == "1") return true;
    if (f == "false" || f == "0") return false;
    fail("bad boolean '" + std::string(f) + "'");
  }

  template <typename F>
  auto parse_with(std::size_t i, F&& f) const {
    try {
      return f(text(i));
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::vector<std::string_view> fields_;
  std::size_t line_;
};

}  // namespace

void write_trial_csv_header(std::ostream& out, const CsvOptions& options) {
  if (options.convention_comment) {
    out << kTrialCsvConvention << '\n';
  }
  out << kTrialCsvHeader;
  if (options.simulated_columns) {
    out << ',' << kSimulatedColumns;
  }
  out << '\n';
}

void write_trial_csv_row(std::ostream& out, const TrialRecord& r, const CsvOptions& options) {
  if (r.participant_id.find_first_of(",\n\r") != std::string::npos) {
    throw ConfigError("participant id may not contain commas or newlines");
  }
  out << r.participant_id << ',' << to_string(r.set) << ',' << r.block << ','
      << to_string(r.widget) << ',' << r.target_id << ',' << to_string(r.group) << ','
      << bool_text(r.first_of_block) << ',' << format_double(r.tt_ms) << ','
      << format_double(r.pem) << ',' << format_double(r.pe_x) << ',' << format_double(r.pe_y)
      << ',' << format_double(r.pe_z) << ',' << format_double(r.aem) << ','
      << format_double(r.ae_x) << ',' << format_double(r.ae_y) << ',' << format_double(r.ae_z)
      << ',' << format_double(r.swing_deg);
  if (options.simulated_columns) {
    out << ',' << bool_text(r.simulated) << ',' << bool_text(r.timed_out);
  }
  out << '\n';
}

void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records,
                     const CsvOptions& options) {
  write_trial_csv_header(out, options);
  for (const TrialRecord& r : records) {
    write_trial_csv_row(out, r, options);
  }
}

std::vector<TrialRecord> read_trial_csv(std::istream& in) {
  const std::string plain_header(kTrialCsvHeader);
  const std::string simulated_header = plain_header + "," + std::string(kSimulatedColumns);

  std::vector<TrialRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool simulated = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!have_header) {
      if (line == plain_header) {
        simulated = false;
      } else if (line == simulated_header) {
        simulated = true;
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unexpected CSV header");
      }
      have_header = true;
      continue;
    }
    const std::size_t expected = simulated ? 19 : 17;
    const RowParser p(split(line), line_no);
    if (p.size() != expected) {
      p.fail("expected " + std::to_string(expected) + " fields, got " +
             std::to_string(p.size()));
    }
    TrialRecord r;
    r.participant_id = std::string(p.text(0));
    r.set = p.parse_with(1, treatment_set_from_string);
    const long long block = p.integer(2);
    if (block < 0) {
      p.fail("negative block index");
    }
    r.block = static_cast<std::size_t>(block);
    r.widget = p.parse_with(3, widget_from_string);
    r.target_id = static_cast<int>(p.integer(4));
    r.group = p.parse_with(5, target_group_from_string);
    r.first_of_block = p.boolean(6);
    r.tt_ms = p.number(7);
    if (r.tt_ms < 0.0) {
      p.fail("negative task time");
    }
    r.pem = p.number(8);
    r.pe_x = p.number(9);
    r.pe_y = p.number(10);
    r.pe_z = p.number(11);
    r.aem = p.number(12);
    r.ae_x = p.number(13);
    r.ae_y = p.number(14);
    r.ae_z = p.number(15);
    r.swing_deg = p.number(16);
    if (simulated) {
      r.simulated = p.boolean(17);
      r.timed_out = p.boolean(18);
    }
    records.push_back(std::move(r));
  }
  if (!have_header) {
    throw InsufficientData("trial CSV is empty (no header)");
  }
  return records;
}

}  // namespace collimator
