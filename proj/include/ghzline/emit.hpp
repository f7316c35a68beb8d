#pragma once

// CSV and JSON writers for sweep rows, plus the matching readers.
//
// CSV header:
//   segment,f_D,f_G,memory,T2_s,yield,fidelity,Q_X,Q_AB,r_per_attempt,r_per_second
// Floats use 17 significant digits; absent values are empty fields in CSV
// and null in JSON. `memory` is "true" or "false".

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ghzline/sweep.hpp"

namespace ghzline::emit {

enum class Format { Csv, Json };
Format parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "segment,f_D,f_G,memory,T2_s,yield,fidelity,Q_X,Q_AB,r_per_attempt,r_per_second";

/// "%.17g"; NaN and infinities are rendered as nan / inf / -inf.
std::string format_double(double v);

void write_csv(const std::vector<sweep::SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<sweep::SweepRow>& rows, std::ostream& out);
void write(const std::vector<sweep::SweepRow>& rows, Format format, std::ostream& out);

/// Writes to `path`; throws std::runtime_error on I/O failure.
void emit(const std::vector<sweep::SweepRow>& rows, Format format, const std::filesystem::path& path);

/// Readers for the formats above. Row-level error messages are not part of
/// the file formats and come back empty.
std::vector<sweep::SweepRow> read_csv(std::istream& in);
std::vector<sweep::SweepRow> read_json(std::istream& in);

}  // namespace ghzline::emit
