#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/sphere_tuple.hpp"

namespace pps {

/// A monomial of H*(P_n; Z2), or of a tensor product of such rings, packed
/// into one word. Each factor owns a bit field holding its x-exponent
/// followed by its exterior mask (bit i-2 stands for x_i). The layout
/// belongs to the Ring that produced the monomial.
struct Monomial {
  std::uint64_t bits = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Mod 2 cohomology ring of P_n, of P^n, or of a product of such spaces.
///
/// For a single factor P_n the ring is Z2[x]/(x^{n1+1}) tensor an exterior
/// algebra on x_2..x_r, except that x_i^2 = x^{n1} x_i when n1 is even and
/// n_i = n1. Products are tensor products over Z2 (no signs). Descriptors
/// are immutable and shared between elements.
class Ring {
 public:
  enum class Kind { pps, truncated_projective, product };

  static std::shared_ptr<const Ring> pps(const SphereTuple& tuple);
  static std::shared_ptr<const Ring> truncated_projective(Nat n);
  static std::shared_ptr<const Ring> product(const Ring& left, const Ring& right);

  Kind kind() const { return kind_; }
  std::size_t factor_count() const { return factors_.size(); }
  const SphereTuple& factor(std::size_t f) const { return factors_[f].tuple; }

  /// Whether x_i^2 = x^{n1} x_i in factor f (i is 2-based as in x_2..x_r).
  bool is_exceptional(std::size_t f, std::size_t i) const;

  Monomial one() const { return {}; }
  /// x^{x_exp} * prod_{i in ext} x_i in factor f. ext uses bit (i-2) for x_i.
  Monomial make(std::size_t f, Nat x_exp, std::uint64_t ext_mask) const;
  /// Componentwise combination of single-factor monomials.
  Monomial combine(Monomial a, Monomial b) const { return {a.bits | b.bits}; }

  Nat x_exp(Monomial m, std::size_t f) const;
  std::uint64_t ext_mask(Monomial m, std::size_t f) const;
  Nat degree(Monomial m) const;
  Nat top_degree() const;

  /// Product in normal form, or nullopt when it vanishes.
  std::optional<Monomial> multiply(Monomial a, Monomial b) const;

  /// Number of basis monomials, sum over all degrees.
  std::uint64_t total_rank() const;

  std::string render(Monomial m) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.factor_tuples() == b.factor_tuples();
  }

 private:
  struct Factor {
    SphereTuple tuple;
    unsigned x_shift;
    unsigned x_bits;
    unsigned mask_shift;
    unsigned mask_bits;
    std::uint64_t exceptional;  // mask bits whose square is x^{n1} x_i
  };

  Ring(Kind kind, std::vector<SphereTuple> tuples);
  std::vector<SphereTuple> factor_tuples() const;

  Kind kind_;
  std::vector<Factor> factors_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline constexpr std::size_t kMaxFactors = 8;

/// An element of a Ring: a duplicate-free sorted set of monomials, all with
/// coefficient 1. The empty set is zero.
class RingElement {
 public:
  explicit RingElement(RingPtr ring) : ring_(std::move(ring)) {}
  RingElement(RingPtr ring, std::vector<Monomial> terms);

  static RingElement zero(RingPtr ring) { return RingElement(std::move(ring)); }
  static RingElement one(RingPtr ring);
  static RingElement monomial(RingPtr ring, Monomial m);

  /// Parses the rendering produced by to_string(), e.g. "x^2*x2 + x*x3".
  /// Non-normal input ("x2^2") is reduced through the ring relations.
  static RingElement parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Common degree of all terms; nullopt for zero or inhomogeneous elements.
  std::optional<Nat> degree() const;
  RingElement homogeneous_part(Nat degree) const;
  RingElement pow(Nat exponent) const;

  std::string to_string() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }
  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  RingPtr ring_;
  std::vector<Monomial> terms_;
};

/// The class x in factor f.
RingElement gen_x(const RingPtr& ring, std::size_t f = 0);
/// The class x_i (i >= 2) in factor f.
RingElement gen_ext(const RingPtr& ring, std::size_t i, std::size_t f = 0);

/// Image of an element of a factor ring under the inclusion into factor slot
/// `offset` of a product ring (a -> 1 (x) a (x) 1 ...).
RingElement embed(const RingElement& a, const RingPtr& product, std::size_t offset);

/// a (x) b in the product ring of their rings.
RingElement tensor(const RingElement& a, const RingElement& b, const RingPtr& product);

/// All basis monomials of the given degree.
std::vector<Monomial> basis(const Ring& ring, Nat degree);

/// Rank of each degree 0..top_degree.
std::vector<std::uint64_t> poincare_series(const Ring& ring);

/// Restriction along j: P^{n1} -> P_n, forgetting every x_i. Defined on
/// single-factor pps rings; lands in the truncated polynomial ring of P^{n1}.
RingElement restrict_to_base(const RingElement& a);

}  // namespace pps
