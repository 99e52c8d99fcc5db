#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "periodlab/currents.hpp"
#include "periodlab/quadrature.hpp"

namespace periodlab {

inline constexpr const char* kVersion = "0.3.0";

enum class CheckStatus { Pass, Fail, Flagged, Info };

std::string to_string(CheckStatus s);
CheckStatus status_from_string(const std::string& s);

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double imag = 0.0;
  /// nullopt marks an exact value.
  std::optional<double> std_error;
  std::optional<double> tolerance;
  CheckStatus status = CheckStatus::Info;
  std::string note;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct RunReport {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::string version = kVersion;
  /// Kept out of the JSON so that reports are reproducible byte for byte.
  double wall_seconds = 0.0;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  bool all_pass() const;
  /// Rows of an identity check, one record per test form.
  void add_identity(const IdentityReport& rep);

  std::string to_json() const;
  static RunReport from_json(const std::string& text);
  /// Short human-readable table.
  std::string summary() const;

  friend bool operator==(const RunReport& a, const RunReport& b) {
    return a.command == b.command && a.parameters == b.parameters && a.seed == b.seed && a.checks == b.checks &&
           a.version == b.version;
  }
};

/// Record for a quadrature estimate; exact estimates carry no stderr.
CheckRecord estimate_record(const std::string& name, const Estimate& e, CheckStatus status = CheckStatus::Info,
                            std::optional<double> tolerance = std::nullopt, std::string note = {});
CheckRecord exact_record(const std::string& name, double value, CheckStatus status = CheckStatus::Info,
                         std::optional<double> tolerance = std::nullopt, std::string note = {});
/// Pass when `ok`, otherwise Fail.
CheckStatus gate(bool ok);

}  // namespace periodlab
