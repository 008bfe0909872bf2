#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collimator/session.hpp"

namespace collimator {

/// Column order of the trial log.
inline constexpr std::string_view kTrialCsvHeader =
    "participant_id,set,block,widget,target_id,group,first_of_block,tt_ms,pem_mm,pe_x_mm,"
    "pe_y_mm,pe_z_mm,aem_deg,ae_x_deg,ae_y_deg,ae_z_deg,swing_deg";

/// Extra columns appended by simulated sessions.
inline constexpr std::string_view kSimulatedColumns = "simulated,timed_out";

/// Comment line written before the header; readers skip lines starting with '#'.
inline constexpr std::string_view kTrialCsvConvention =
    "# ae_x/ae_y/ae_z: extrinsic world X-Y-Z Euler angles of tool*target^-1 (deg); "
    "swing_deg: angle between drill and target axes";

struct CsvOptions {
  bool simulated_columns = false;
  bool convention_comment = true;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

void write_trial_csv_header(std::ostream& out, const CsvOptions& options = {});
void write_trial_csv_row(std::ostream& out, const TrialRecord& record,
                         const CsvOptions& options = {});
void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records,
                     const CsvOptions& options = {});

/// Accepts both the plain and the simulated column layouts. Throws
/// ParseError with a line number on malformed input, InsufficientData
/// on an input without a header.
std::vector<TrialRecord> read_trial_csv(std::istream& in);

}  // namespace collimator
