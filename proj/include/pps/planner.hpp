#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pps/arith.hpp"

namespace pps {

using Vec = Eigen::VectorXd;

inline constexpr double kSphereTolerance = 1e-12;

/// A unit vector of R^{n+1}, a point of S^n.
class SpherePoint {
 public:
  /// Throws std::invalid_argument unless | |coords| - 1 | <= 1e-12.
  explicit SpherePoint(Vec coords);
  /// Parses "1,0,0" and normalizes it. Throws on the zero vector.
  static SpherePoint parse_normalized(const std::string& text);

  const Vec& coords() const { return coords_; }
  Nat dim() const { return static_cast<Nat>(coords_.size()) - 1; }

 private:
  Vec coords_;
};

/// t -> cos(angle s) start + sin(angle s) tangent for s in [0, 1].
struct Arc {
  Vec start;
  Vec tangent;  // unit and orthogonal to start, or zero when angle == 0
  double angle = 0;
};

/// Concatenated great-circle arcs on one sphere, traversed at constant speed.
class ArcChain {
 public:
  explicit ArcChain(Vec origin) : origin_(std::move(origin)) {}

  /// Minimal geodesic from the current end to `to` (must not be antipodal).
  ArcChain& geodesic_to(const Vec& to);
  /// Half great circle from the current end towards the unit tangent `dir`.
  ArcChain& half_circle(const Vec& dir);

  Vec end() const;
  double length() const { return length_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  Vec evaluate(double t) const;

 private:
  Vec origin_;
  std::vector<Arc> arcs_;
  double length_ = 0;
};

/// A path in a product of spheres: one arc chain per factor, evaluated on
/// the concatenated coordinates.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<ArcChain> blocks) : blocks_(std::move(blocks)) {}
  static Path concat(const Path& a, const Path& b);

  const std::vector<ArcChain>& blocks() const { return blocks_; }
  Vec evaluate(double t) const;

 private:
  std::vector<ArcChain> blocks_;
};

/// A tame motion planner on a product of spheres with the diagonal
/// antipodal action. Points are concatenated coordinate vectors; rule
/// domains are {margin > 0}.
class Planner {
 public:
  virtual ~Planner() = default;

  virtual std::string name() const = 0;
  virtual std::size_t rule_count() const = 0;
  /// Ambient dimension n_i + 1 of each sphere factor.
  virtual std::vector<std::size_t> block_dims() const = 0;
  virtual double margin(std::size_t rule, const Vec& a, const Vec& b) const = 0;
  /// Throws std::domain_error outside the rule's domain.
  virtual Path section(std::size_t rule, const Vec& a, const Vec& b) const = 0;
  /// First rule whose margin is positive.
  virtual std::optional<std::size_t> select(const Vec& a, const Vec& b) const;
  virtual Nat level(std::size_t rule) const { return rule; }
  /// Reference point per factor (the pole C of even-sphere planners).
  virtual Vec anchor() const = 0;

  bool member(std::size_t rule, const Vec& a, const Vec& b) const { return margin(rule, a, b) > 0; }
  std::size_t ambient_dim() const;
  Nat max_level() const;
};

using PlannerPtr = std::shared_ptr<const Planner>;

/// v(A) = (-a2, a1, -a4, a3, ...): equivariant, unit, tangent on odd spheres.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> odd_field(const Eigen::MatrixBase<Derived>& a) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> v(a.size());
  for (Eigen::Index i = 0; i + 1 < a.size(); i += 2) {
    v(i) = -a(i + 1);
    v(i + 1) = a(i);
  }
  return v;
}

/// Unnormalized v'(A) = (0, -a2, a1, ..., -a_n, a_{n-1}) in coordinates with
/// C = e0; its squared norm is 1 - <A,C>^2 on the sphere.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> even_field_numerator(const Eigen::MatrixBase<Derived>& a) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> v(a.size());
  v(0) = 0;
  for (Eigen::Index i = 1; i + 1 < a.size(); i += 2) {
    v(i) = -a(i + 1);
    v(i + 1) = a(i);
  }
  return v;
}

/// Two rules on S^n, n odd. Throws std::domain_error for even n.
PlannerPtr odd_sphere_planner(Nat n);

/// Three rules on S^n, n even, with pole C and cap radius w in (0, pi/4).
/// C defaults to e0. Throws std::domain_error on bad parameters.
PlannerPtr even_sphere_planner(Nat n, std::optional<Vec> pole = std::nullopt, double cap_radius = 0.5);

/// The odd or even planner as appropriate, with default pole and radius.
PlannerPtr sphere_planner(Nat n);

/// Rules (i, j), index i * q.rule_count() + j, weight f_i g_j from the
/// normalized positive parts of the factor margins, argmax selection with
/// lexicographic tie-break, level = level_p(i) + level_q(j).
PlannerPtr product_planner(PlannerPtr p, PlannerPtr q);

/// The planner with only the listed rules (renumbered in order).
PlannerPtr restrict_rules(PlannerPtr base, std::vector<std::size_t> keep);

/// TC_G(S^n) for the antipodal action: 1 for odd n, 2 for even n.
Nat tc_g_sphere(Nat n);
/// Product inequality: the sum of factor values.
Nat tc_g_product_bound(const std::vector<Nat>& values);
/// Inclusive form (tcg_fiber + 1)(tc_base + 1) - 1 of the Borel-fibration bound.
Nat tc_upper_borel(Nat tcg_fiber, Nat tc_base);

struct VerifyTolerances {
  double endpoint = 1e-9;
  double equivariance = 1e-9;
  double offsphere = 1e-9;
  double continuity_delta = 1e-7;
  double continuity_modulus = 1e5;  // a jump shows up as ~1 / delta
};

struct VerifyOptions {
  Nat samples = 100000;         // uniform pairs
  Nat adversarial = 2000;       // pairs per adversarial family
  Nat continuity_probes = 2000;
  std::uint64_t seed = 1;
  std::size_t max_witnesses = 5;
  VerifyTolerances tol;
};

struct ContinuityStat {
  Nat probes = 0;
  double max_modulus = 0;
  double mean_modulus = 0;
};

struct Witness {
  std::string family;
  std::string reason;
  Vec a;
  Vec b;
};

struct VerificationReport {
  std::string planner;
  Nat samples = 0;
  Nat covered = 0;
  double coverage = 0;
  double max_endpoint_err = 0;
  double max_equivariance_defect = 0;
  double max_offsphere = 0;
  Nat invariance_violations = 0;
  std::vector<ContinuityStat> continuity;  // per rule
  std::vector<Nat> rule_usage;             // per rule, selected counts
  std::vector<Nat> level_histogram;        // index = level
  std::vector<Witness> witnesses;
  std::vector<std::string> failures;
  bool passed = false;

  Nat max_level_used() const;
  std::size_t rules_used() const;
};

/// Samples uniform pairs plus antipodal, near-pole, equator and identical
/// families; checks coverage, endpoints, sphere membership, equivariance of
/// every member rule at 11 times, invariance of the domains and an
/// empirical continuity modulus. Deterministic for a given seed.
VerificationReport verify_planner(const Planner& planner, const VerifyOptions& options = {});

}  // namespace pps
