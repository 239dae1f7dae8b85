#include "encforge/metrics/export.hpp"

#include <ostream>

#include "encforge/data/io.hpp"

namespace encforge::metrics {

using data::format_double;

void write_profile_csv(std::ostream& out, const DisentanglementProfile& profile) {
  out << "target_code,sigma,out_code,variance\n";
  for (const ScanGroup& g : profile.groups) {
    for (std::size_t j = 0; j < g.omega.size(); ++j) {
      out << g.target << ',' << format_double(g.sigma) << ',' << j << ','
          << format_double(g.omega[j]) << '\n';
    }
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioEntry>& ratios) {
  out << "code,sigma_sq,ratio\n";
  for (const RatioEntry& r : ratios) {
    out << r.code << ',' << format_double(r.sigma_sq) << ',';
    if (r.ratio) out << format_double(*r.ratio);
    out << '\n';
  }
}

void write_prior_metric_csv(std::ostream& out, const PriorMetricProfile& profile) {
  out << "fixed_code,out_code,variance,excluded\n";
  for (std::size_t k = 0; k < profile.variance.size(); ++k) {
    for (std::size_t j = 0; j < profile.variance[k].size(); ++j) {
      out << k << ',' << j << ',' << format_double(profile.variance[k][j]) << ','
          << (profile.excluded[j] ? 1 : 0) << '\n';
    }
  }
}

namespace {

void write_columns(std::ostream& out, const std::vector<std::string>& names,
                   const std::vector<const std::vector<double>*>& columns) {
  out << "t";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
  for (std::size_t t = 0; t < rows; ++t) {
    out << t;
    for (const auto* c : columns) out << ',' << format_double((*c)[t]);
    out << '\n';
  }
}

}  // namespace

void write_distance_csv(std::ostream& out, const RationalityReport& r) {
  if (r.reference) {
    write_columns(out, {"distance", "reference"}, {&r.distance, &r.reference->distance});
  } else {
    write_columns(out, {"distance"}, {&r.distance});
  }
}

void write_speed_csv(std::ostream& out, const RationalityReport& r) {
  if (r.reference) {
    write_columns(out, {"speed1", "speed2", "reference1", "reference2"},
                  {&r.speed1, &r.speed2, &r.reference->speed1, &r.reference->speed2});
  } else {
    write_columns(out, {"speed1", "speed2"}, {&r.speed1, &r.speed2});
  }
}

void write_direction_csv(std::ostream& out, const RationalityReport& r) {
  if (r.reference) {
    write_columns(out, {"direction1", "direction2", "reference1", "reference2"},
                  {&r.direction1, &r.direction2, &r.reference->direction1,
                   &r.reference->direction2});
  } else {
    write_columns(out, {"direction1", "direction2"}, {&r.direction1, &r.direction2});
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<model::SweepFrame>& frames) {
  out << "value,t_index,x1,y1,x2,y2\n";
  for (const auto& f : frames) {
    const auto& e = f.encounter;
    for (std::size_t t = 0; t < e.length(); ++t) {
      out << format_double(f.value) << ',' << t << ',' << format_double(e.s1[t].x) << ','
          << format_double(e.s1[t].y) << ',' << format_double(e.s2[t].x) << ','
          << format_double(e.s2[t].y) << '\n';
    }
  }
}

}  // namespace encforge::metrics
