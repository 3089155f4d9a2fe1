#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pps/arith.hpp"

namespace pps {

/// Raised when an input exceeds what the exhaustive engines are built for.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The tuple (n1, ..., nr) of sphere dimensions defining P_n.
///
/// Entries are positive and nondecreasing. The derived invariants are the
/// length l(n) = r, the dimension |n| = sum n_i, and k, the number of
/// spheres S^{n_i} with i > 1 and n_i even.
class SphereTuple {
 public:
  explicit SphereTuple(std::vector<Nat> entries);

  /// Parses "2,7" style input. Throws std::invalid_argument on malformed or
  /// unsorted input.
  static SphereTuple parse(std::string_view text);

  const std::vector<Nat>& entries() const { return entries_; }
  Nat operator[](std::size_t i) const { return entries_[i]; }
  std::size_t length() const { return entries_.size(); }
  Nat first() const { return entries_.front(); }
  Nat dim() const;
  Nat even_count() const;

  /// The tuple with the entries at the given positions removed.
  SphereTuple without(const std::vector<std::size_t>& positions) const;
  /// The first `count` entries.
  SphereTuple prefix(std::size_t count) const;

  std::string to_string() const;

  friend bool operator==(const SphereTuple&, const SphereTuple&) = default;
  friend auto operator<=>(const SphereTuple&, const SphereTuple&) = default;

 private:
  std::vector<Nat> entries_;
};

/// Caps for the exhaustive operations (basis enumeration, cup-length and
/// zero-divisor searches).
inline constexpr std::size_t kMaxLength = 16;
inline constexpr Nat kMaxDim = 64;

/// Throws CapacityError naming the cap when the tuple exceeds it.
void require_exhaustive_capacity(const SphereTuple& t);

}  // namespace pps
