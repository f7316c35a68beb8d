#include "ghzline/emit.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ghzline::emit {

using sweep::SweepRow;

namespace {

constexpr const char* kKeys[] = {"segment", "f_D",  "f_G",           "memory",       "T2_s",  "yield",
                                 "fidelity", "Q_X", "Q_AB", "r_per_attempt", "r_per_second"};

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string json_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_double(*v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::runtime_error("bad number '" + s + "' in CSV");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error("bad boolean '" + s + "' in CSV");
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.segment) << ',' << format_double(r.f_d) << ',' << format_double(r.f_g) << ','
        << (r.memory ? "true" : "false") << ',' << optional_number(r.t2_s) << ',' << optional_number(r.yield) << ','
        << optional_number(r.fidelity) << ',' << optional_number(r.q_x) << ',' << optional_number(r.q_ab) << ','
        << optional_number(r.r_per_attempt) << ',' << optional_number(r.r_per_second) << '\n';
  }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i == 0 ? "\n" : ",\n") << "  {\"segment\": " << nlohmann::json(r.segment).dump()
        << ", \"f_D\": " << json_number(r.f_d) << ", \"f_G\": " << json_number(r.f_g)
        << ", \"memory\": " << (r.memory ? "true" : "false") << ", \"T2_s\": " << json_number(r.t2_s)
        << ", \"yield\": " << json_number(r.yield) << ", \"fidelity\": " << json_number(r.fidelity)
        << ", \"Q_X\": " << json_number(r.q_x) << ", \"Q_AB\": " << json_number(r.q_ab)
        << ", \"r_per_attempt\": " << json_number(r.r_per_attempt)
        << ", \"r_per_second\": " << json_number(r.r_per_second) << '}';
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void write(const std::vector<SweepRow>& rows, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    write_csv(rows, out);
  } else {
    write_json(rows, out);
  }
}

void emit(const std::vector<SweepRow>& rows, Format format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write(rows, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != std::size(kKeys)) throw std::runtime_error("CSV row has wrong field count");
    SweepRow r;
    r.segment = f[0];
    r.f_d = parse_number(f[1]).value_or(0.0);
    r.f_g = parse_number(f[2]).value_or(0.0);
    r.memory = parse_bool(f[3]);
    r.t2_s = parse_number(f[4]);
    r.yield = parse_number(f[5]);
    r.fidelity = parse_number(f[6]);
    r.q_x = parse_number(f[7]);
    r.q_ab = parse_number(f[8]);
    r.r_per_attempt = parse_number(f[9]);
    r.r_per_second = parse_number(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> read_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  if (!doc.is_array()) throw std::runtime_error("sweep JSON must be an array");
  const auto num = [](const nlohmann::json& o, const char* key) -> std::optional<double> {
    const auto& v = o.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  std::vector<SweepRow> rows;
  for (const auto& o : doc) {
    if (o.size() != std::size(kKeys)) throw std::runtime_error("sweep JSON object has unexpected keys");
    SweepRow r;
    r.segment = o.at("segment").get<std::string>();
    r.f_d = num(o, "f_D").value_or(0.0);
    r.f_g = num(o, "f_G").value_or(0.0);
    r.memory = o.at("memory").get<bool>();
    r.t2_s = num(o, "T2_s");
    r.yield = num(o, "yield");
    r.fidelity = num(o, "fidelity");
    r.q_x = num(o, "Q_X");
    r.q_ab = num(o, "Q_AB");
    r.r_per_attempt = num(o, "r_per_attempt");
    r.r_per_second = num(o, "r_per_second");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ghzline::emit
