#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace levyset {

// One table row of an experiment: `x` is the n / t / u coordinate, reference
// holds the bound or oracle value the estimate is checked against, and the
// verdict names the claim ("pass:..." / "fail:..." / "info:...").
struct ReportRow {
  std::string experiment;
  double x = 0.0;
  double estimate = 0.0;
  double stderr_value = 0.0;
  double reference = 0.0;
  std::string verdict;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  long long reps = 0;
  double truncation_eps = 0.0;
  double truncation_variance = 0.0;
  double wall_seconds = 0.0;  // printed to the console, never serialized
  std::vector<ReportRow> rows;
  std::map<std::string, double> extra;

  bool passed() const;
};

// Deterministic %.12g formatting (infinities as "inf"/"-inf").
std::string format_double(double v);

// CSV schema: a `# key=value ...` metadata line (no timing), a header
// `experiment,n,estimate,stderr,bound,verdict`, then one line per row.
void write_report_csv(const ExperimentReport& report, std::ostream& os);

void print_report(const ExperimentReport& report, std::ostream& os);

}  // namespace levyset
