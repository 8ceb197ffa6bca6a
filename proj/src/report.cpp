#include "levyset/report.hpp"

#include <cmath>
#include <cstdio>

namespace levyset {

bool ExperimentReport::passed() const {
  for (const auto& row : rows) {
    if (row.verdict.rfind("fail", 0) == 0) return false;
  }
  return true;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_report_csv(const ExperimentReport& report, std::ostream& os) {
  os << "# name=" << report.name << " seed=" << report.seed << " reps=" << report.reps
     << " eps=" << format_double(report.truncation_eps)
     << " truncation_variance=" << format_double(report.truncation_variance);
  for (const auto& [key, value] : report.extra) {
    os << " " << key << "=" << format_double(value);
  }
  os << "\n";
  os << "experiment,n,estimate,stderr,bound,verdict\n";
  for (const auto& row : report.rows) {
    os << row.experiment << "," << format_double(row.x) << "," << format_double(row.estimate)
       << "," << format_double(row.stderr_value) << "," << format_double(row.reference) << ","
       << row.verdict << "\n";
  }
}

void print_report(const ExperimentReport& report, std::ostream& os) {
  os << "== " << report.name << " (seed " << report.seed << ", reps " << report.reps;
  if (report.truncation_eps > 0) {
    os << ", eps " << format_double(report.truncation_eps) << ", discarded variance "
       << format_double(report.truncation_variance);
  }
  os << ", " << format_double(report.wall_seconds) << " s)\n";
  for (const auto& row : report.rows) {
    os << "  " << row.experiment << " x=" << format_double(row.x)
       << " estimate=" << format_double(row.estimate)
       << " stderr=" << format_double(row.stderr_value)
       << " ref=" << format_double(row.reference) << " " << row.verdict << "\n";
  }
  os << (report.passed() ? "  => all checks passed\n" : "  => CHECK FAILURES PRESENT\n");
}

}  // namespace levyset
