#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pps/charclass.hpp"

using namespace pps;

namespace {

// (x+y)^{L+1} in H*(P^m x P^n) computed in the ring engine.
bool axial_by_ring(Nat m, Nat n, Nat L) {
  auto pm = Ring::truncated_projective(m), pn = Ring::truncated_projective(n);
  auto prod = Ring::product(*pm, *pn);
  auto s = embed(gen_x(pm), prod, 0) + embed(gen_x(pn), prod, 1);
  return !s.pow(L + 1).is_zero();
}

}  // namespace

TEST_CASE("total_sw") {
  CHECK(total_sw(SphereTuple({2, 2})).to_string() == "1 + x^2");
  CHECK(total_sw(SphereTuple({1, 3})).to_string() == "1");
  CHECK(total_sw(SphereTuple({1})).to_string() == "1");
  // Classical P^n: (1+x)^{n+1} expanded in the ring.
  for (Nat n = 1; n <= 32; ++n) {
    auto ring = Ring::truncated_projective(n);
    auto expected = (RingElement::one(ring) + gen_x(ring)).pow(n + 1);
    CHECK(total_sw(SphereTuple({n})) == expected);
  }
}

TEST_CASE("stably parallelizable tuples have trivial total class") {
  int seen = 0;
  auto visit = [&](auto&& self, std::vector<Nat>& e, Nat remaining) -> void {
    if (!e.empty()) {
      SphereTuple t(e);
      if (t.length() <= kMaxLength && stably_parallelizable(t)) {
        ++seen;
        CHECK(total_sw(t).to_string() == "1");
      }
    }
    const Nat start = e.empty() ? 1 : e.back();
    for (Nat v = start; v <= remaining; ++v) {
      e.push_back(v);
      self(self, e, remaining - v);
      e.pop_back();
    }
  };
  std::vector<Nat> e;
  visit(visit, e, 20);
  CHECK(seen > 50);
}

TEST_CASE("sw of a product of projective spaces") {
  auto w = sw_of_projective_product({2, 2});
  CHECK(w.homogeneous_part(2).to_string() == "x^2 + x*y + y^2");
  CHECK_FALSE(w.homogeneous_part(2).is_zero());
  CHECK(sw_of_projective_product({3}).to_string() == "1");
  CHECK_THROWS_AS(sw_of_projective_product({}), std::invalid_argument);
}

TEST_CASE("axial obstruction") {
  CHECK(axial_obstruction(2, 2, 2) == Axial::obstructed);
  CHECK(axial_obstruction(12, 27, 31) == Axial::unobstructed);
  CHECK(axial_obstruction(1, 1, 1) == Axial::unobstructed);
  for (Nat a = 5; a <= 12; ++a) CHECK_FALSE(binom_mod2(32, a));
  // Binomial route against the ring engine, plus monotonicity in L.
  for (Nat m = 1; m <= 10; ++m)
    for (Nat n = 1; n <= 12; ++n)
      for (Nat L = 1; L <= m + n + 2; ++L) {
        const bool ob = axial_obstruction(m, n, L) == Axial::obstructed;
        CHECK(ob == axial_by_ring(m, n, L));
        if (!ob) CHECK(axial_obstruction(m, n, L + 1) == Axial::unobstructed);
      }
}

TEST_CASE("Hopf-type queries reduce to the axial query at n1") {
  SphereTuple t({2, 5});
  for (Nat M = 1; M < 20; ++M)
    CHECK(hopf_type_obstruction(t, M) == axial_obstruction(2, t.dim() + 1, M + 1));
}

TEST_CASE("gd lower bound") {
  CHECK(gd_lower_bound(11, 6) == 5);
  CHECK(gd_lower_bound(7, 6) == 1);
  const Nat g8 = gd_lower_bound(8, 6);  // reported, not asserted as gd
  CHECK(g8 <= 6);
  CHECK(gd_lower_bound(28, 12) == 4);
  // Residue table for n1 = 6 (cited for |n|+r = 1..7 mod 8).
  const Nat table[8] = {0, 6, 6, 5, 4, 3, 2, 1};
  for (Nat kk = 1; kk <= 64; ++kk) {
    if (kk % 8 == 0) continue;
    CHECK(gd_lower_bound(kk, 6) == table[kk % 8]);
  }
  for (Nat kk = 1; kk <= 40; ++kk)
    for (Nat n1 = 1; n1 <= 20; ++n1) {
      const Nat g = gd_lower_bound(kk, n1);
      CHECK(g <= n1);
      if (binom_mod2(kk + n1 - 1, n1)) CHECK(g == n1);
      if (g > 0) CHECK(binom_mod2(kk + g - 1, g));
    }
}

TEST_CASE("stable parallelizability") {
  CHECK(stably_parallelizable(SphereTuple({1, 1})));
  CHECK_FALSE(stably_parallelizable(SphereTuple({2, 2})));
  CHECK_FALSE(stably_parallelizable(SphereTuple({12, 14})));
  CHECK(stably_parallelizable(SphereTuple({3})));
  CHECK(stably_parallelizable(SphereTuple({7})));
}

TEST_CASE("immersion report") {
  auto torus = immersion_report(SphereTuple({1, 1}));
  CHECK(torus.stably_parallelizable);
  CHECK(torus.imm_exact == 3);

  auto kee = immersion_report(SphereTuple({12, 14}));
  CHECK_FALSE(kee.stably_parallelizable);
  CHECK(kee.gd_used.g == 4);
  CHECK(kee.imm_lower == 30);  // |n| + 4
  CHECK_FALSE(kee.imm_exact.has_value());
  CHECK(kee.metastable_ok == (3 * 26 < 2 * 30));

  auto with = immersion_report(SphereTuple({12, 14}), GdOverride{7, "external: gd literature"});
  CHECK(with.imm_exact == 26 + 7);
  CHECK(with.gd_used.is_override);
  CHECK_FALSE(with.agj_ok);  // needs g > ceil(13/2) = 7
  CHECK(immersion_report(SphereTuple({12, 14}), GdOverride{8, "hypothetical"}).agj_ok);
  CHECK(*with.imm_exact >= with.imm_lower);

  CHECK_THROWS_AS(immersion_report(SphereTuple({12, 14}), GdOverride{2, "too small"}), std::invalid_argument);
  CHECK_THROWS_AS(immersion_report(SphereTuple({12, 14}), GdOverride{7, ""}), std::invalid_argument);
}

TEST_CASE("axial existence interval") {
  CHECK(axial_exists_interval(SphereTuple({3, 5}), SphereTuple({3, 5})) == Interval(3, 3));
  auto i22 = axial_exists_interval(SphereTuple({2, 2}), SphereTuple({2, 2}));
  CHECK(i22.lo == 3);
  CHECK_FALSE(i22.hi.has_value());
  CHECK(axial_exists_interval(SphereTuple({1, 4}), SphereTuple({1, 4})) == Interval(1, 1));
  CHECK(axial_exists_interval(SphereTuple({7}), SphereTuple({7, 9})) == Interval(7, 7));
}
