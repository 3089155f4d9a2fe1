#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pps {

using Nat = std::uint64_t;

/// Largest argument accepted by the scalar functions below.
inline constexpr Nat kMaxNat = Nat{1} << 63;

namespace detail {

inline void check_range(Nat m, const char* fn) {
  if (m > kMaxNat)
    throw std::out_of_range(std::string(fn) + ": argument exceeds 2^63");
}

}  // namespace detail

/// 2-adic valuation: the exponent of the highest power of 2 dividing m.
inline Nat nu(Nat m) {
  detail::check_range(m, "nu");
  if (m == 0) throw std::domain_error("nu: valuation of 0 is undefined");
  return static_cast<Nat>(std::countr_zero(m));
}

/// Number of ones in the binary expansion of m.
inline Nat alpha(Nat m) {
  detail::check_range(m, "alpha");
  return static_cast<Nat>(std::popcount(m));
}

/// #{ j : 1 <= j <= n, j mod 8 in {0,1,2,4} }.
inline Nat phi(Nat n) {
  detail::check_range(n, "phi");
  if (n == 0) throw std::domain_error("phi: requires n >= 1");
  // Four hits per full block of eight; the partial block contributes by residue.
  static constexpr Nat partial[8] = {0, 1, 2, 2, 3, 3, 3, 3};
  return 4 * (n / 8) + partial[n % 8];
}

/// 1 for n in {1,3,7} (the parallelizable projective spaces), else 0.
inline Nat epsilon(Nat n) {
  detail::check_range(n, "epsilon");
  return (n == 1 || n == 3 || n == 7) ? 1 : 0;
}

/// C(n,k) mod 2 via Lucas: odd iff the bits of k are a submask of n.
inline bool binom_mod2(Nat n, Nat k) {
  detail::check_range(n, "binom_mod2");
  detail::check_range(k, "binom_mod2");
  if (k > n) return false;
  return (n & k) == k;
}

/// Hurwitz-Radon number: writing nu(m) = 4d + c with 0 <= c <= 3, returns 2^c + 8d.
inline Nat hurwitz_radon_rho(Nat m) {
  detail::check_range(m, "hurwitz_radon_rho");
  if (m == 0) throw std::domain_error("hurwitz_radon_rho: requires m >= 1");
  const Nat v = nu(m);
  return (Nat{1} << (v % 4)) + 8 * (v / 4);
}

/// Whether a non-singular bilinear map R^k x R^m -> R^m exists.
inline bool hr_bilinear_exists(Nat k, Nat m) {
  if (k == 0 || m == 0)
    throw std::domain_error("hr_bilinear_exists: requires k, m >= 1");
  return k <= hurwitz_radon_rho(m);
}

inline bool is_power_of_two(Nat n) { return std::has_single_bit(n); }

/// floor(log2 n) for n >= 1.
inline Nat floor_log2(Nat n) {
  if (n == 0) throw std::domain_error("floor_log2: requires n >= 1");
  return static_cast<Nat>(std::bit_width(n) - 1);
}

}  // namespace pps
