#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "encforge/data/encounter.hpp"

namespace encforge::data {

// xy:     encounter_id,t_index,x1,y1,x2,y2        (meters or normalized units)
// latlon: encounter_id,t_index,lat1,lon1,lat2,lon2 (degrees; projected on read)
enum class CsvFormat { Xy, LatLon };

CsvFormat parse_csv_format(const std::string& name);

inline constexpr double kEarthRadiusM = 6371008.8;

// Rows are grouped by encounter_id in order of first appearance; t_index
// must count up from 0 within each encounter. Vehicle-2 fields may be left
// empty, which shortens that sequence and fails length validation.
// Lat/lon input is projected to local meters with an equirectangular map
// about the encounter's mean latitude and longitude.
std::vector<Encounter> read_csv(std::istream& in, CsvFormat format = CsvFormat::Xy);
std::vector<Encounter> ingest(const std::filesystem::path& path, CsvFormat format = CsvFormat::Xy);

// Numbers are written with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<Encounter>& encs);
void export_csv(const std::vector<Encounter>& encs, const std::filesystem::path& path);

struct Manifest {
  int format_version = 1;
  std::string csv_file;
  std::size_t length = 0;
  std::string units;          // "meters" | "normalized"
  std::string normalization;  // "none" | "shared-frame" | "per-sequence"
  std::vector<std::string> ids;
};

Manifest make_manifest(const std::vector<Encounter>& encs, const std::string& csv_file);
void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace encforge::data
