#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pps/cohomology.hpp"
#include "pps/interval.hpp"

namespace pps {

/// Total Stiefel-Whitney class w(P_n) = (1+x)^{|n|+r}, truncated at x^{n1}.
RingElement total_sw(const SphereTuple& tuple);

/// Total Stiefel-Whitney class of P^{d_1} x ... x P^{d_k}: prod (1+x_i)^{d_i+1}.
/// Factor f uses the variable letters x, y, z, ...
RingElement sw_of_projective_product(const std::vector<Nat>& dims);

enum class Axial { obstructed, unobstructed };

/// Whether (x+y)^{L+1} != 0 in H*(P^m x P^n), which forbids an axial
/// map P^m x P^n -> P^L. This is the only obstruction path: Hopf-type and
/// product-space queries all reduce to it.
Axial axial_obstruction(Nat m, Nat n, Nat L);

/// The exponent a with x^a y^{L+1-a} surviving in (x+y)^{L+1}, if any.
std::optional<Nat> axial_witness(Nat m, Nat n, Nat L);

/// Obstruction to a Hopf-type map P_n x P^{|n|+r-1} -> P^{M+r-1}, through
/// the axial query at (n1, |n|+r-1, M+r-1).
Axial hopf_type_obstruction(const SphereTuple& tuple, Nat M);

/// Largest g <= n1 with C(kk+g-1, g) odd (0 if none). A lower bound for
/// gd(-kk xi_{n1}).
Nat gd_lower_bound(Nat kk, Nat n1);

/// nu(|n|+r) >= phi(n1).
bool stably_parallelizable(const SphereTuple& tuple);

struct GdOverride {
  Nat g = 0;
  std::string provenance;
};

struct GdUsed {
  Nat g = 0;
  bool is_override = false;
  std::string provenance;
};

struct ImmersionReport {
  SphereTuple tuple;
  bool stably_parallelizable = false;
  Nat imm_lower = 0;
  std::optional<Nat> imm_exact;
  GdUsed gd_used;
  bool metastable_ok = false;
  bool agj_ok = false;
  std::vector<std::string> notes;
};

/// Immersion dimension analysis of P_n. Without an override only lower
/// bounds are emitted; exact values come from stable parallelizability or a
/// provenance-carrying gd value. Throws std::invalid_argument when the
/// override is below the parity bound.
ImmersionReport immersion_report(const SphereTuple& tuple,
                                 const std::optional<GdOverride>& gd_override = std::nullopt);

/// Range for the minimal L admitting an axial map P_n x P_m -> P^L. The
/// lower end is the first unobstructed L at or above max(n1, m1). The upper
/// end is set only for the multiplications of R, C, H, O (n1 = m1 in {1,3,7}).
Interval axial_exists_interval(const SphereTuple& left, const SphereTuple& right);

}  // namespace pps
