#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/monotone.hpp"
#include "levyset/svint.hpp"

namespace levyset {

// Flat `section.key = value` text configuration ('#' starts a comment).
class ParsedConfig {
 public:
  ParsedConfig() = default;
  static ParsedConfig from_file(const std::string& path);
  static ParsedConfig from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, std::string value);

  std::string str(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::vector<double> number_list(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<int> int_list(const std::string& key, const std::vector<int>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Builders from config (throw std::invalid_argument naming the violation).
Kernel kernel_from_config(const ParsedConfig& cfg);
LevyDriverSpec driver_from_config(const ParsedConfig& cfg);
BFamily family_from_config(const ParsedConfig& cfg);
MonotoneIngredients ingredients_from_config(const ParsedConfig& cfg);

struct Violation {
  bool is_error = true;  // false: warning
  std::string message;
};

// Dry-run of the module preconditions for a subcommand, including the
// separation certificate and the monotone integrability conditions. Reports
// instead of throwing.
std::vector<Violation> validate_config(const ParsedConfig& cfg, const std::string& subcommand);

}  // namespace levyset
