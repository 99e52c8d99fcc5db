#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "periodlab/laurent.hpp"
#include "periodlab/report.hpp"

namespace periodlab {

struct MahlerArgs {
  std::string poly;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
  bool hypergeometric = false;
};

struct TripleArgs {
  int n = 1;
  int suite_size = 5;
  /// Defaults to 1e-3 for n <= 1 and 5e-3 above.
  std::optional<double> tol;
  std::uint64_t seed = 0;
  /// Quadrature budget per chain patch.
  std::uint64_t budget = 1'000'000;
};

struct CorrespondenceArgs {
  std::string poly;
  int samples = 1000;
  std::uint64_t seed = 0;
};

struct PeriodArgs {
  std::string poly;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
};

// Malformed polynomials throw ParseError; out-of-range sizes throw std::invalid_argument.
RunReport cmd_mahler(const MahlerArgs& args);
RunReport cmd_verify_triple(const TripleArgs& args);
RunReport cmd_correspondence(const CorrespondenceArgs& args);
RunReport cmd_period(const PeriodArgs& args);

/// 0 when every gated check passes, 1 otherwise.
int exit_status(const RunReport& r);

/// alpha when p is alpha + x + 1/x + y + 1/y.
std::optional<double> p_alpha_parameter(const LaurentPolynomial& p);

}  // namespace periodlab
