#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "periodlab/log_forms.hpp"
#include "periodlab/quadrature.hpp"
#include "periodlab/test_forms.hpp"

namespace periodlab {

/// Space a chain maps into: P^n (homogeneous coordinates) or C^n.
struct Ambient {
  Chart::Kind kind = Chart::Kind::Projective;
  int n = 1;

  int coordinate_count() const { return kind == Chart::Kind::Projective ? n + 1 : n; }
  int real_dim() const { return 2 * n; }
  friend bool operator==(const Ambient&, const Ambient&) = default;
};

/// Map from natural domain coordinates (jets) to ambient coordinates (jets).
using ChainMap = std::function<void(std::span<const Jet> params, std::vector<Jet>& out)>;

struct ChainPatch {
  Domain domain;
  ChainMap map;
  int sign = 1;
};

/// Oriented chain: a finite union of parametrized patches of a common dimension.
class ParametrizedChain {
 public:
  ParametrizedChain(Ambient ambient, int dim, std::string label = {});

  void add_patch(ChainPatch patch);

  const Ambient& ambient() const { return ambient_; }
  int dim() const { return dim_; }
  const std::vector<ChainPatch>& patches() const { return patches_; }
  const std::string& label() const { return label_; }

  /// Rank of the real Jacobian at a patch point (spot check).
  int jacobian_rank(std::size_t patch, std::span<const double> u) const;

 private:
  Ambient ambient_;
  int dim_;
  std::string label_;
  std::vector<ChainPatch> patches_;
};

using ChainPtr = std::shared_ptr<const ParametrizedChain>;

/// Holomorphic map applied after a chain (face embeddings and the like).
struct Transform {
  std::string label;
  Ambient target;
  std::function<void(std::span<const Jet> in, std::vector<Jet>& out)> apply;
};

Transform face_transform(int n, int r);

/// scalar * f_#(chain ⌞ weight); the weight is expressed in the chain's own coordinates.
struct CurrentTerm {
  cplx scalar{1.0, 0.0};
  ChainPtr chain;
  LogForm weight;
  std::vector<Transform> transforms;
};

/// Finite sum of weighted chain currents on a fixed ambient space.
class GeometricCurrent {
 public:
  explicit GeometricCurrent(Ambient ambient) : ambient_(ambient) {}

  void add_term(CurrentTerm term);

  const Ambient& ambient() const { return ambient_; }
  const std::vector<CurrentTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree as a current; -1 for the zero current.
  int degree() const { return degree_; }

  GeometricCurrent& operator*=(cplx c);
  GeometricCurrent& operator+=(const GeometricCurrent& o);

 private:
  Ambient ambient_;
  int degree_ = -1;
  std::vector<CurrentTerm> terms_;
};

/// Quadrature for pairings. `quadrature.budget` is per patch; with `allocate`
/// the summed budget of a pairing is redistributed across its patches in
/// proportion to their pilot spread.
struct PairOptions {
  QuadratureOptions quadrature;
  bool adapt = true;
  bool allocate = true;
  AdaptiveOptions grid;
};

/// T(phi) = sum of scalar * sign * integral of weight ^ phi over each chain.
Estimate pair(const GeometricCurrent& T, const TestForm& phi, const PairOptions& opts = {});
/// dT(phi) = (-1)^{deg T + 1} T(d phi).
Estimate boundary_pair(const GeometricCurrent& T, const TestForm& phi, const PairOptions& opts = {});

/// sum_{r=0}^{k} (-1)^r (iota_r)_# T for T on P^{n-1}.
GeometricCurrent tau(int k, const GeometricCurrent& T);

// Chains on projective space.
ChainPtr projective_space_chain(int n);
/// Phi_{n,j}(P^j x Delta_{n-j}); j = 0 is the real simplex.
ChainPtr r_chain(int n, int j);
/// Phi_{n,j}(P^j x iota_0(Delta_{n-j-1})): the s_0 = 0 face of r_chain.
ChainPtr r_face_chain(int n, int j);
/// S_j as the image of P^{n-1} x Delta_1 under [u:lambda:w], s -> [u : s_0 lambda - eps(u) : s_1 lambda : w].
ChainPtr s_chain(int n, int j);

struct FundamentalTriple {
  GeometricCurrent theta;
  GeometricCurrent simplex;
  GeometricCurrent w;
};

FundamentalTriple build_fundamental_triple(int n);

/// One test form's comparison of two sides of an identity.
struct ResidualRow {
  int form = 0;
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  cplx residual{0.0, 0.0};
  double std_error = 0.0;
  double scale = 0.0;
  double relative = 0.0;
  bool within_tolerance = false;
  bool within_noise = false;  ///< |residual| <= 3 * stderr
  bool flagged = false;
  bool pass = false;
};

struct IdentityReport {
  std::string identity;
  int n = 0;
  int j = 0;
  double tolerance = 0.0;
  std::vector<ResidualRow> rows;
  double max_relative = 0.0;
  bool pass = true;
};

struct VerifyOptions {
  int suite_size = 5;
  std::uint64_t seed = 0;
  double tolerance = 1e-3;
  PairOptions pairing;
  /// Explicit suite; generated from `seed` when empty.
  std::vector<TestForm> suite;
};

/// Residual bookkeeping shared by the verifiers: lhs - sum(coeffs * rhs parts).
ResidualRow make_row(int form, const Estimate& lhs, std::span<const cplx> coeffs,
                     std::span<const Estimate* const> rhs_parts, double tolerance);

IdentityReport verify_fundamental_relation(int n, const VerifyOptions& opts);
IdentityReport verify_d_theta(int n, int j, const VerifyOptions& opts);
IdentityReport verify_boundary_R(int n, int j, const VerifyOptions& opts);
IdentityReport verify_d_omega(int n, int j, const VerifyOptions& opts);

}  // namespace periodlab
