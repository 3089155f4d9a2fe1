#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pps/cohomology.hpp"
#include "pps/config.hpp"
#include "pps/interval.hpp"

namespace pps {

/// A longest nonzero product found by a generator search.
struct ProductWitness {
  Nat length = 0;
  Nat x_exp = 0;                // exponent of x (or of the zero divisor x (x) 1 + 1 (x) x)
  std::vector<Nat> ext_exps;    // exponents of the x_i (or their zero divisors), i = 2..r
};

/// Longest nonzero product of the standard zero divisors
/// x(x)1 + 1(x)x and x_i(x)1 + 1(x)x_i in H*(P_n x P_n). Every exponent is
/// searched up to nilpotency, with zero-product pruning. The search stops
/// early once `max_len` is reached. Throws CapacityError beyond the caps.
ProductWitness zcl_search(const SphereTuple& tuple, std::optional<Nat> max_len = std::nullopt);
inline Nat zcl_lower(const SphereTuple& tuple, std::optional<Nat> max_len = std::nullopt) {
  return zcl_search(tuple, max_len).length;
}

/// Longest nonzero product of the positive-degree generators x, x_i of H*(P_n).
ProductWitness cup_length_search(const SphereTuple& tuple);
inline Nat cup_length(const SphereTuple& tuple) { return cup_length_search(tuple).length; }

struct RegistryEntry {
  Interval tc;
  std::string basis;
};

/// Known values of TC(P^n). Exact for n in {1,3,7} and for n a 2-power;
/// otherwise [max(zcl, James bound), 2n] unless an override supplies TC or
/// Imm (then TC = Imm - epsilon(n)). Overrides outside the certified range
/// are rejected.
RegistryEntry tc_p_lookup(Nat n, const OverrideConfig& config = {});
inline Interval tc_p_registry(Nat n, const OverrideConfig& config = {}) {
  return tc_p_lookup(n, config).tc;
}

/// 2^{e+1} - 2e - (2,1,1,3)[e mod 4]: lower bound for TC(P^{2^e-1}).
Nat james_lower(Nat e);

std::optional<Nat> upper_main2(const SphereTuple& tuple);
Nat lower_main2(const SphereTuple& tuple, const OverrideConfig& config = {});
/// Inclusive form (TC(P^{n1})_hi + 1)(l + k) - 1 of the strict Borel bound.
Nat upper_cota1(const SphereTuple& tuple, const OverrideConfig& config = {});
/// The strict right-hand side (TC(P^{n1})_hi + 1)(l + k).
Nat cota1_strict_rhs(const SphereTuple& tuple, const OverrideConfig& config = {});
std::optional<Nat> teces_upper(const SphereTuple& tuple);
/// 2^{e+1} + l - 2 with e = floor(log2 n1).
Nat enriques_lower(const SphereTuple& tuple);

struct AnalogoResult {
  Interval tc;
  bool exact = false;
};

/// When nu(n_i + 1) >= phi(n1) for every i > 1 (and l > 1):
/// [zcl(P^{n1}) + l - 1, TC(P^{n1})_hi + l - 1].
std::optional<AnalogoResult> analogo(const SphereTuple& tuple, const OverrideConfig& config = {});

/// Indices i > 1 (0-based positions) whose sphere factors out: nu(n_i+1) >= phi(n1).
std::vector<std::size_t> split_indices(const SphereTuple& tuple);

struct SplitResult {
  Nat value = 0;
  std::vector<std::size_t> indices;
  SphereTuple remainder;
};

/// Subadditivity after factoring out split spheres: upper(P_m) + sum TC(S^{n_i}).
std::optional<SplitResult> split_upper(const SphereTuple& tuple, const OverrideConfig& config = {});

/// TC of a sphere: 1 for odd, 2 for even dimension.
inline Nat tc_sphere(Nat n) { return n % 2 == 0 ? 2 : 1; }

enum class BoundTag {
  main2_upper,
  main2_lower,
  cota1_upper,
  teces_upper,
  twocat_upper,
  enriques_lower,
  zcl_lower,
  jassint_lower,
  analogo,
  subadditive_split,
  cates_upper,
  berstein_upper,
  cuplength_lower,
  dim_upper,
};

enum class BoundKind { lower, upper, exact };
enum class BoundTarget { tc, cat };

std::string to_string(BoundTag tag);
std::string to_string(BoundKind kind);
std::string to_string(BoundTarget target);

struct BoundItem {
  BoundTag tag;
  BoundTarget target = BoundTarget::tc;
  BoundKind kind = BoundKind::lower;
  std::optional<Nat> value;  // present iff applicable
  bool applicable = false;
  std::string hypothesis;
  std::string citation;

  bool bounds_below() const { return applicable && kind != BoundKind::upper; }
  bool bounds_above() const { return applicable && kind != BoundKind::lower; }
};

struct CatBounds {
  Interval cat;
  std::vector<BoundItem> items;
};

/// [cup_length, min(|n| - [n1 > 1 and l > 1], (n1+1) l - 1)].
CatBounds cat_bounds(const SphereTuple& tuple);

struct BoundFlags {
  bool stably_parallelizable = false;
  bool analogo_applicable = false;
  bool analogo_exact = false;
  Nat circle_factors = 0;
  std::vector<std::size_t> splits;
  bool tc_below_dim = false;
};

struct BoundReport {
  SphereTuple tuple;
  Interval tc;
  Interval cat;
  std::vector<BoundItem> items;
  BoundFlags flags;

  /// First applicable item with this tag and target, if any.
  const BoundItem* find(BoundTag tag, BoundTarget target = BoundTarget::tc,
                        std::optional<BoundKind> kind = std::nullopt) const;
};

/// Raised when a lower bound exceeds an upper bound: always an
/// implementation bug or a bad override.
class InconsistentBounds : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Every applicable TC and cat bound for P_n with the certified intervals.
BoundReport combine(const SphereTuple& tuple, const OverrideConfig& config = {});

}  // namespace pps
