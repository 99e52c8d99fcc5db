#include "periodlab/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace periodlab {

using nlohmann::ordered_json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Flagged: return "flagged";
    case CheckStatus::Info: return "info";
  }
  return "info";
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "flagged") return CheckStatus::Flagged;
  if (s == "info") return CheckStatus::Info;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

CheckStatus gate(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

bool RunReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail || c.status == CheckStatus::Flagged) return false;
  return true;
}

void RunReport::add_identity(const IdentityReport& rep) {
  const std::string base = rep.identity + "[n=" + std::to_string(rep.n) + ",j=" + std::to_string(rep.j) + "]";
  for (const auto& row : rep.rows) {
    CheckRecord r;
    r.name = base + ".form" + std::to_string(row.form);
    r.value = row.relative;
    r.std_error = row.scale > 0.0 ? row.std_error / row.scale : row.std_error;
    r.tolerance = rep.tolerance;
    if (row.pass && !row.flagged) {
      r.status = CheckStatus::Pass;
    } else if (!row.within_tolerance || row.flagged) {
      r.status = CheckStatus::Flagged;
    } else {
      r.status = CheckStatus::Fail;
    }
    std::ostringstream note;
    note.precision(6);
    note << "residual " << std::abs(row.residual) << " scale " << row.scale << (row.within_noise ? "" : " above 3 stderr");
    r.note = note.str();
    add(std::move(r));
  }
}

CheckRecord estimate_record(const std::string& name, const Estimate& e, CheckStatus status,
                            std::optional<double> tolerance, std::string note) {
  CheckRecord r;
  r.name = name;
  r.value = e.value.real();
  r.imag = e.value.imag();
  if (!e.exact) r.std_error = e.std_error;
  r.tolerance = tolerance;
  r.status = (status == CheckStatus::Pass && (e.flagged || !e.converged)) ? CheckStatus::Flagged : status;
  r.note = std::move(note);
  return r;
}

CheckRecord exact_record(const std::string& name, double value, CheckStatus status, std::optional<double> tolerance,
                         std::string note) {
  CheckRecord r;
  r.name = name;
  r.value = value;
  r.tolerance = tolerance;
  r.status = status;
  r.note = std::move(note);
  return r;
}

std::string RunReport::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  ordered_json rows = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json r;
    r["name"] = c.name;
    r["value"] = c.value;
    if (c.imag != 0.0) r["imag"] = c.imag;
    if (c.std_error) {
      r["stderr"] = *c.std_error;
    } else {
      r["stderr"] = "exact";
    }
    if (c.tolerance) r["tolerance"] = *c.tolerance;
    r["status"] = to_string(c.status);
    if (!c.note.empty()) r["note"] = c.note;
    rows.push_back(r);
  }
  j["checks"] = rows;
  j["pass"] = all_pass();
  return j.dump(2) + "\n";
}

RunReport RunReport::from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<std::string>();
  for (const auto& row : j.at("checks")) {
    CheckRecord c;
    c.name = row.at("name").get<std::string>();
    c.value = row.at("value").get<double>();
    if (row.contains("imag")) c.imag = row.at("imag").get<double>();
    const auto& se = row.at("stderr");
    if (!se.is_string()) c.std_error = se.get<double>();
    if (row.contains("tolerance")) c.tolerance = row.at("tolerance").get<double>();
    c.status = status_from_string(row.at("status").get<std::string>());
    if (row.contains("note")) c.note = row.at("note").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string RunReport::summary() const {
  std::ostringstream os;
  os << command << " (seed " << seed << ")\n";
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "  %-8s %-44s %.10g", to_string(c.status).c_str(), c.name.c_str(), c.value);
    os << line;
    if (c.std_error) {
      std::snprintf(line, sizeof line, " +- %.2g", *c.std_error);
      os << line;
    }
    if (!c.note.empty()) os << "  " << c.note;
    os << "\n";
  }
  std::snprintf(line, sizeof line, "%s in %.1fs\n", all_pass() ? "PASS" : "FAIL", wall_seconds);
  os << line;
  return os.str();
}

}  // namespace periodlab
