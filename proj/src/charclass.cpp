#include "pps/charclass.hpp"

#include <algorithm>
#include <stdexcept>

namespace pps {

RingElement total_sw(const SphereTuple& tuple) {
  auto ring = Ring::pps(tuple);
  const Nat exponent = tuple.dim() + tuple.length();
  std::vector<Monomial> terms;
  for (Nat j = 0; j <= tuple.first(); ++j)
    if (binom_mod2(exponent, j)) terms.push_back(ring->make(0, j, 0));
  return RingElement(ring, std::move(terms));
}

RingElement sw_of_projective_product(const std::vector<Nat>& dims) {
  if (dims.empty()) throw std::invalid_argument("sw_of_projective_product: dims must be nonempty");
  RingPtr ring = Ring::truncated_projective(dims.front());
  for (std::size_t i = 1; i < dims.size(); ++i)
    ring = Ring::product(*ring, *Ring::truncated_projective(dims[i]));
  RingElement w = RingElement::one(ring);
  for (std::size_t f = 0; f < dims.size(); ++f)
    w *= (RingElement::one(ring) + gen_x(ring, f)).pow(dims[f] + 1);
  return w;
}

std::optional<Nat> axial_witness(Nat m, Nat n, Nat L) {
  const Nat e = L + 1;
  const Nat lo = e > n ? e - n : 0;
  const Nat hi = std::min(m, e);
  for (Nat a = lo; a <= hi; ++a)
    if (binom_mod2(e, a)) return a;
  return std::nullopt;
}

Axial axial_obstruction(Nat m, Nat n, Nat L) {
  if (m == 0 || n == 0 || L == 0) throw std::domain_error("axial_obstruction: requires m, n, L >= 1");
  return axial_witness(m, n, L) ? Axial::obstructed : Axial::unobstructed;
}

Axial hopf_type_obstruction(const SphereTuple& tuple, Nat M) {
  const Nat r = tuple.length();
  return axial_obstruction(tuple.first(), tuple.dim() + r - 1, M + r - 1);
}

Nat gd_lower_bound(Nat kk, Nat n1) {
  if (kk == 0 || n1 == 0) throw std::domain_error("gd_lower_bound: requires kk, n1 >= 1");
  for (Nat g = n1; g >= 1; --g)
    if (binom_mod2(kk + g - 1, g)) return g;
  return 0;
}

bool stably_parallelizable(const SphereTuple& tuple) {
  return nu(tuple.dim() + tuple.length()) >= phi(tuple.first());
}

ImmersionReport immersion_report(const SphereTuple& tuple, const std::optional<GdOverride>& gd_override) {
  ImmersionReport rep{tuple, false, 0, std::nullopt, {}, false, false, {}};
  const Nat dim = tuple.dim();
  const Nat n1 = tuple.first();
  const Nat kk = dim + tuple.length();
  rep.stably_parallelizable = stably_parallelizable(tuple);
  const Nat g_parity = gd_lower_bound(kk, n1);

  if (rep.stably_parallelizable) {
    rep.imm_lower = dim + 1;
    rep.imm_exact = dim + 1;
    rep.gd_used = {0, false, "stably parallelizable: -(|n|+r)xi is stably trivial"};
    rep.notes.push_back("stably parallelizable (nu(|n|+r) >= phi(n1)): imm = |n|+1");
    if (gd_override) rep.notes.push_back("gd override ignored for a stably parallelizable tuple");
  } else {
    rep.imm_lower = dim + g_parity;
    rep.gd_used = {g_parity, false,
                   "parity lower bound: largest g <= n1 with C(|n|+r+g-1, g) odd"};
    rep.notes.push_back("not stably parallelizable: imm = |n| + gd(-(|n|+r)xi_{n1})");
    if (gd_override) {
      if (gd_override->g < 1) throw std::invalid_argument("gd override must be >= 1");
      if (gd_override->g < g_parity)
        throw std::invalid_argument("gd override " + std::to_string(gd_override->g) +
                                    " is below the parity lower bound " + std::to_string(g_parity));
      if (gd_override->provenance.empty())
        throw std::invalid_argument("gd override requires a provenance string");
      rep.gd_used = {gd_override->g, true, gd_override->provenance};
      rep.imm_exact = dim + gd_override->g;
    }
  }
  // Haefliger-Hirsch metastable range: 3|n| < 2M.
  rep.metastable_ok = 3 * dim < 2 * rep.imm_lower;
  // gd(-(|n|+r)xi_{n1}) > ceil((n1+1)/2) makes the arithmetic hypothesis superfluous.
  rep.agj_ok = rep.gd_used.g > (n1 + 2) / 2;
  return rep;
}

Interval axial_exists_interval(const SphereTuple& left, const SphereTuple& right) {
  const Nat n1 = left.first(), m1 = right.first();
  Nat L = std::max(n1, m1);
  while (axial_obstruction(n1, m1, L) == Axial::obstructed) ++L;
  std::optional<Nat> hi;
  if (n1 == m1 && epsilon(n1) == 1) hi = n1;
  return {L, hi};
}

}  // namespace pps
