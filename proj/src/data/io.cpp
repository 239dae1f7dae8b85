#include "encforge/data/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "encforge/error.hpp"

namespace encforge::data {

CsvFormat parse_csv_format(const std::string& name) {
  if (name == "xy") return CsvFormat::Xy;
  if (name == "latlon") return CsvFormat::LatLon;
  throw ConfigError("unknown csv format '" + name + "' (expected xy or latlon)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line_no, const char* column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    parse_fail(line_no, std::string("invalid number '") + field + "' in column " + column);
  }
  return v;
}

struct RawEncounter {
  std::string id;
  std::vector<Point> s1, s2;
};

void project_latlon(RawEncounter& raw) {
  double lat_sum = 0.0, lon_sum = 0.0;
  std::size_t n = 0;
  for (auto* s : {&raw.s1, &raw.s2}) {
    for (const Point& p : *s) {
      lat_sum += p.x;
      lon_sum += p.y;
      ++n;
    }
  }
  const double lat0 = lat_sum / static_cast<double>(n);
  const double lon0 = lon_sum / static_cast<double>(n);
  constexpr double deg = std::numbers::pi / 180.0;
  const double cos_lat0 = std::cos(lat0 * deg);
  for (auto* s : {&raw.s1, &raw.s2}) {
    for (Point& p : *s) {
      const double lat = p.x;
      const double lon = p.y;
      p = Point{kEarthRadiusM * (lon - lon0) * deg * cos_lat0, kEarthRadiusM * (lat - lat0) * deg};
    }
  }
}

}  // namespace

std::vector<Encounter> read_csv(std::istream& in, CsvFormat format) {
  const char* cols_xy[] = {"x1", "y1", "x2", "y2"};
  const char* cols_ll[] = {"lat1", "lon1", "lat2", "lon2"};
  const char** cols = format == CsvFormat::Xy ? cols_xy : cols_ll;

  std::vector<RawEncounter> raws;
  std::map<std::string, std::size_t> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line.rfind("encounter_id", 0) == 0) continue;  // header
    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      parse_fail(line_no, "expected 6 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) parse_fail(line_no, "empty encounter_id");

    std::size_t t_index = 0;
    {
      const auto& f = fields[1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), t_index);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        parse_fail(line_no, "invalid t_index '" + f + "'");
      }
    }
    auto [it, inserted] = by_id.try_emplace(fields[0], raws.size());
    if (inserted) raws.push_back(RawEncounter{fields[0], {}, {}});
    RawEncounter& raw = raws[it->second];
    if (t_index != raw.s1.size()) {
      parse_fail(line_no, "t_index " + std::to_string(t_index) + " out of order for encounter '" +
                              raw.id + "' (expected " + std::to_string(raw.s1.size()) + ")");
    }
    raw.s1.push_back({parse_number(fields[2], line_no, cols[0]),
                      parse_number(fields[3], line_no, cols[1])});
    const bool second_empty = fields[4].empty() && fields[5].empty();
    if (!second_empty) {
      raw.s2.push_back({parse_number(fields[4], line_no, cols[2]),
                        parse_number(fields[5], line_no, cols[3])});
    }
  }

  std::vector<Encounter> out;
  out.reserve(raws.size());
  for (auto& raw : raws) {
    Encounter enc;
    enc.id = raw.id;
    if (raw.s1.size() != raw.s2.size()) {
      throw ValidationError("encounter '" + raw.id + "' has mixed lengths " +
                            std::to_string(raw.s1.size()) + " and " + std::to_string(raw.s2.size()));
    }
    if (format == CsvFormat::LatLon) project_latlon(raw);
    enc.s1 = std::move(raw.s1);
    enc.s2 = std::move(raw.s2);
    enc.validate();
    out.push_back(std::move(enc));
  }
  return out;
}

std::vector<Encounter> ingest(const std::filesystem::path& path, CsvFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_csv(in, format);
}

void write_csv(std::ostream& out, const std::vector<Encounter>& encs) {
  out << "encounter_id,t_index,x1,y1,x2,y2\n";
  for (const auto& e : encs) {
    e.validate();
    for (std::size_t t = 0; t < e.length(); ++t) {
      out << e.id << ',' << t << ',' << format_double(e.s1[t].x) << ',' << format_double(e.s1[t].y)
          << ',' << format_double(e.s2[t].x) << ',' << format_double(e.s2[t].y) << '\n';
    }
  }
}

void export_csv(const std::vector<Encounter>& encs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_csv(out, encs);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Manifest make_manifest(const std::vector<Encounter>& encs, const std::string& csv_file) {
  Manifest m;
  m.csv_file = csv_file;
  m.length = encs.empty() ? 0 : encs.front().length();
  const bool normalized = !encs.empty() && encs.front().normalized;
  m.units = normalized ? "normalized" : "meters";
  m.normalization = "none";
  if (normalized && encs.front().frame) m.normalization = to_string(encs.front().frame->mode);
  for (const auto& e : encs) m.ids.push_back(e.id);
  return m;
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["format_version"] = m.format_version;
  j["csv"] = m.csv_file;
  j["T"] = m.length;
  j["units"] = m.units;
  j["normalization"] = m.normalization;
  j["count"] = m.ids.size();
  j["encounters"] = m.ids;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    Manifest m;
    m.format_version = j.at("format_version").get<int>();
    m.csv_file = j.at("csv").get<std::string>();
    m.length = j.at("T").get<std::size_t>();
    m.units = j.at("units").get<std::string>();
    m.normalization = j.at("normalization").get<std::string>();
    m.ids = j.at("encounters").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest '" + path.string() + "': " + e.what());
  }
}

}  // namespace encforge::data
