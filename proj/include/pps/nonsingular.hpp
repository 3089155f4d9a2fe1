#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pps/arith.hpp"

namespace pps {

using Vec = Eigen::VectorXd;

/// Ambient block dimensions (n_1 + 1, ..., n_l + 1) of a tuple of vectors.
using BlockDims = std::vector<std::size_t>;

inline constexpr double kConeTolerance = 1e-10;

/// A tuple (x_1, ..., x_l) stored flat.
class ConeVector {
 public:
  ConeVector(BlockDims dims, Vec flat);
  static ConeVector from_blocks(const std::vector<Vec>& blocks);

  const BlockDims& dims() const { return dims_; }
  const Vec& flat() const { return flat_; }
  std::size_t block_count() const { return dims_.size(); }
  Vec block(std::size_t i) const;
  double block_norm(std::size_t i) const { return block(i).norm(); }
  /// Full-tuple norm |x|.
  double norm() const { return flat_.norm(); }
  bool is_zero() const { return norm() == 0; }
  /// |x_1| = ... = |x_l| up to kConeTolerance (relative to the largest norm).
  bool in_cone() const;

 private:
  BlockDims dims_;
  Vec flat_;
  std::vector<Eigen::Index> offsets_;
};

std::size_t total_dim(const BlockDims& dims);
/// Parses "2,4" style block dimensions.
BlockDims parse_block_dims(const std::string& text);

/// A map R^{left} x R^{right} -> R^{out_dim} on flat coordinates.
struct BlackBoxMap {
  std::string name;
  BlockDims left;
  BlockDims right;
  std::size_t out_dim = 0;
  bool biequivariant = false;
  std::function<Vec(const Vec&, const Vec&)> fn;

  /// Checks the input sizes (std::invalid_argument) and evaluates.
  Vec operator()(const Vec& x, const Vec& y) const;
};

/// Cayley-Dickson product on R^d for d in {1, 2, 4, 8, ...}.
Vec cayley_dickson_multiply(const Vec& a, const Vec& b);

/// Built-in bilinear maps: "real", "complex", "quaternion", "octonion"
/// (multiplication on R^1, R^2, R^4, R^8) and "inner" (R^2 x R^2 -> R).
/// Throws std::invalid_argument for unknown names.
BlackBoxMap builtin_map(const std::string& name);
std::vector<std::string> builtin_names();

/// The inner product R^d x R^d -> R.
BlackBoxMap inner_product_map(std::size_t d);

/// (x, y) -> f(x_1, y_1) on tuples with the given block shapes.
/// Throws std::domain_error on non-cone input.
BlackBoxMap from_classical(const BlackBoxMap& f, const BlockDims& n, const BlockDims& m);

/// The sphere map (x, y) -> f(x_1, y_1) / |f(x_1, y_1)| on unit-block tuples.
BlackBoxMap sphere_map_from_classical(const BlackBoxMap& f, const BlockDims& n, const BlockDims& m);

/// f(x, y) = (|x| / sqrt r)(|y| / sqrt s) g(sqrt r x / |x|, sqrt s y / |y|),
/// and 0 when x = 0 or y = 0. Throws std::domain_error on non-cone input and
/// std::invalid_argument unless g is declared biequivariant.
BlackBoxMap biradial_extend(const BlackBoxMap& g);

/// N(x, y) g(x_1/|x_1|, ..., y_s/|y_s|) with N = (prod |x_i|)^{1/r} (prod |y_j|)^{1/s},
/// and 0 when some block vanishes.
BlackBoxMap biradial_extend_v(const BlackBoxMap& g);

/// Raised when f(-x, y) != -f(x, y) or f(x, -y) != -f(x, y).
class SignInconsistency : public std::domain_error {
 public:
  SignInconsistency(const std::string& what, Vec x, Vec y)
      : std::domain_error(what), x(std::move(x)), y(std::move(y)) {}
  Vec x, y;
};

struct SignCheckOptions {
  Nat samples = 10000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;  // relative to |f(x, y)|
};

/// Samples sign pairs on cone vectors; returns the first violation found.
std::optional<SignInconsistency> find_sign_inconsistency(const BlackBoxMap& f, const SignCheckOptions& options = {});

/// The map on line pairs: returns the unit representative of the line
/// through f(x, y) whose first nonzero coordinate is positive. Throws
/// SignInconsistency (with witness) if the sampled check fails, and
/// std::domain_error when evaluated where f vanishes.
BlackBoxMap induced_axial(const BlackBoxMap& f, const SignCheckOptions& options = {});

/// Canonical unit representative of the line through v.
Vec line_representative(const Vec& v);

/// A cone vector with uniform block directions and the given common block norm.
Vec random_cone_vector(const BlockDims& dims, std::mt19937_64& rng, double block_norm = 1.0);

struct NonsingularOptions {
  Nat budget = 100000;      // sampled pairs
  Nat descents = 20;        // local minimizations started from the worst samples
  Nat max_iterations = 200;
  std::uint64_t seed = 1;
  double zero_threshold = 1e-8;
};

struct NonsingularResult {
  bool ok = true;  // no counterexample found: a sampling verdict, not a proof
  Nat samples = 0;
  double min_sampled_norm = 0;
  double min_norm = 0;  // after descent
  std::optional<Vec> counter_x;
  std::optional<Vec> counter_y;
};

/// Samples unit-block pairs, then runs Levenberg-Marquardt on |f|^2 over the
/// product of unit spheres from the worst samples. A pair with |f| below the
/// threshold is a counterexample.
NonsingularResult check_nonsingular(const BlackBoxMap& f, const NonsingularOptions& options = {});

}  // namespace pps
