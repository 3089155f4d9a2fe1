#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pps/bounds.hpp"
#include "pps/planner.hpp"

using namespace pps;

namespace {

Vec e(Eigen::Index d, Eigen::Index i) { return Vec::Unit(d, i); }

VerifyOptions small(Nat n, std::uint64_t seed = 3) {
  VerifyOptions o;
  o.samples = n;
  o.adversarial = n / 10;
  o.continuity_probes = 500;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("odd sphere examples") {
  auto p = odd_sphere_planner(3);
  CHECK(p->rule_count() == 2);
  CHECK(p->select(e(4, 0), e(4, 1)) == 0u);
  const Vec mid = p->section(0, e(4, 0), e(4, 1)).evaluate(0.5);
  CHECK((mid - (e(4, 0) + e(4, 1)) / std::sqrt(2.0)).norm() < 1e-12);

  CHECK(p->select(e(4, 0), -e(4, 0)) == 1u);
  CHECK((p->section(1, e(4, 0), -e(4, 0)).evaluate(0.5) - e(4, 1)).norm() < 1e-12);

  auto circle = odd_sphere_planner(1);
  CHECK(circle->select(e(2, 0), e(2, 1)) == 0u);
  const Path quarter = circle->section(0, e(2, 0), e(2, 1));
  const double a = std::numbers::pi / 8;
  CHECK((quarter.evaluate(0.25) - Vec((Vec(2) << std::cos(a), std::sin(a)).finished())).norm() < 1e-12);
  CHECK_THROWS_AS(odd_sphere_planner(4), std::domain_error);
  CHECK_THROWS_AS(odd_sphere_planner(0), std::domain_error);
  CHECK_THROWS_AS(p->section(0, e(4, 0), -e(4, 0)), std::domain_error);
}

TEST_CASE("even sphere examples") {
  auto p = even_sphere_planner(2);
  CHECK(p->rule_count() == 3);
  CHECK(p->select(e(3, 0), -e(3, 0)) == 2u);
  CHECK((p->section(2, e(3, 0), -e(3, 0)).evaluate(0.5) - e(3, 1)).norm() < 1e-12);
  CHECK(p->select(e(3, 1), -e(3, 1)) == 1u);
  CHECK(p->select(e(3, 0), e(3, 1)) == 0u);
  // From -C the path runs along -gamma.
  CHECK((p->section(2, -e(3, 0), e(3, 0)).evaluate(0.5) + e(3, 1)).norm() < 1e-12);

  CHECK_THROWS_AS(even_sphere_planner(3), std::domain_error);
  CHECK_THROWS_AS(even_sphere_planner(2, std::nullopt, 0.0), std::domain_error);
  CHECK_THROWS_AS(even_sphere_planner(2, std::nullopt, std::numbers::pi / 4), std::domain_error);
  CHECK_THROWS_AS(even_sphere_planner(2, Vec(Vec::Ones(3))), std::domain_error);
  CHECK_THROWS_AS(even_sphere_planner(2, e(4, 0)), std::domain_error);
}

TEST_CASE("rule counts match TC_G + 1") {
  for (Nat n = 1; n <= 12; ++n) {
    CHECK(sphere_planner(n)->rule_count() == tc_g_sphere(n) + 1);
    CHECK(sphere_planner(n)->max_level() == tc_g_sphere(n));
  }
  CHECK(tc_g_sphere(3) == 1);
  CHECK(tc_g_sphere(4) == 2);
  CHECK(tc_g_sphere(1) == 1);
  CHECK_THROWS_AS(tc_g_sphere(0), std::domain_error);
}

TEST_CASE("vector fields are exact on integer points") {
  // Integer representatives of rational sphere points: p / q with |p| = q.
  using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> coord(-1000, 1000);
  for (int n : {1, 3, 5, 7, 15}) {
    for (int k = 0; k < 500; ++k) {
      IVec a(n + 1);
      for (auto& c : a) c = coord(rng);
      const IVec v = odd_field(a);
      CHECK(v.dot(a) == 0);
      CHECK(v.squaredNorm() == a.squaredNorm());
      CHECK(odd_field(IVec(-a)) == IVec(-v));
    }
  }
  for (int n : {2, 4, 6, 10}) {
    for (int k = 0; k < 500; ++k) {
      IVec a(n + 1);
      for (auto& c : a) c = coord(rng);
      const IVec v = even_field_numerator(a);
      CHECK(v.dot(a) == 0);
      CHECK(v(0) == 0);
      CHECK(v.squaredNorm() == a.squaredNorm() - a(0) * a(0));
      CHECK(even_field_numerator(IVec(-a)) == IVec(-v));
    }
  }
  // (3/5, 4/5, 0, 0) is a rational point of S^3.
  IVec p(4);
  p << 3, 4, 0, 0;
  CHECK(odd_field(p) == (IVec(4) << -4, 3, 0, 0).finished());
}

TEST_CASE("value formulas") {
  CHECK(tc_g_product_bound({1, 2}) == 3);
  CHECK(tc_g_product_bound({}) == 0);
  CHECK(tc_upper_borel(2, 3) == 11);
  CHECK(tc_upper_borel(0, 7) == 7);
  // TC_G(S_n) = l + k via the product inequality.
  const SphereTuple t({1, 2, 3, 4, 6});
  std::vector<Nat> vals;
  for (auto n : t.entries()) vals.push_back(tc_g_sphere(n));
  CHECK(tc_g_product_bound(vals) == t.length() + 3);
}

TEST_CASE("Borel bound agrees with the bounds module") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(2, 6), entry(1, 12);
  for (int k = 0; k < 100; ++k) {
    std::vector<Nat> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = static_cast<Nat>(entry(rng));
    std::sort(v.begin(), v.end());
    const SphereTuple t(v);
    const Nat fiber_tcg = t.length() + t.even_count() - 1;
    CHECK(upper_cota1(t) == tc_upper_borel(fiber_tcg, *tc_p_registry(t.first()).hi));
  }
}

TEST_CASE("verification of sphere planners") {
  for (Nat n : {1, 2, 3, 4, 5, 6}) {
    CAPTURE(n);
    const auto rep = verify_planner(*sphere_planner(n), small(4000));
    CHECK(rep.passed);
    CHECK(rep.coverage == 1.0);
    CHECK(rep.max_endpoint_err < 1e-9);
    CHECK(rep.max_offsphere < 1e-9);
    CHECK(rep.max_equivariance_defect < 1e-9);
    CHECK(rep.invariance_violations == 0);
    CHECK(rep.rules_used() == tc_g_sphere(n) + 1);
  }
}

TEST_CASE("even planner with a rotated pole") {
  Vec c(5);
  c << 1, -2, 0.5, 3, 1;
  c.normalize();
  auto p = even_sphere_planner(4, c, 0.3);
  CHECK(p->select(c, -c) == 2u);
  const auto rep = verify_planner(*p, small(4000));
  CHECK(rep.passed);
  CHECK(rep.rules_used() == 3);
  // The detour passes through a point orthogonal to the pole.
  CHECK(std::abs(p->section(2, c, -c).evaluate(0.5).dot(c)) < 1e-12);
}

TEST_CASE("deleting a rule leaves a gap with an antipodal witness") {
  auto p = restrict_rules(odd_sphere_planner(3), {0});
  const auto rep = verify_planner(*p, small(2000));
  CHECK_FALSE(rep.passed);
  CHECK(rep.coverage < 1.0);
  REQUIRE_FALSE(rep.witnesses.empty());
  bool antipodal = false;
  for (const auto& w : rep.witnesses) antipodal |= (w.a + w.b).norm() < 1e-12;
  CHECK(antipodal);

  auto q = restrict_rules(even_sphere_planner(2), {0, 1});
  CHECK_FALSE(verify_planner(*q, small(2000)).passed);
  CHECK_THROWS_AS(restrict_rules(odd_sphere_planner(3), {2}), std::out_of_range);
}

TEST_CASE("product planners") {
  auto s34 = product_planner(odd_sphere_planner(3), even_sphere_planner(4));
  CHECK(s34->rule_count() == 6);
  CHECK(s34->max_level() == 3);
  const auto rep = verify_planner(*s34, small(4000));
  CHECK(rep.passed);
  CHECK(rep.max_level_used() == 3);

  auto torus = product_planner(odd_sphere_planner(1), odd_sphere_planner(1));
  const auto trep = verify_planner(*torus, small(2000));
  CHECK(trep.passed);
  CHECK(trep.max_level_used() == 2);
  CHECK(torus->max_level() == tc_g_product_bound({1, 1}));

  // A single-rule factor changes no level.
  auto single = restrict_rules(odd_sphere_planner(1), {0});
  auto p = product_planner(even_sphere_planner(2), single);
  for (std::size_t r = 0; r < 3; ++r) CHECK(p->level(r) == r);

  // Levels never exceed the product bound.
  auto big = product_planner(product_planner(even_sphere_planner(2), odd_sphere_planner(3)), even_sphere_planner(2));
  CHECK(big->max_level() == tc_g_product_bound({2, 1, 2}));
  const auto brep = verify_planner(*big, small(2000));
  CHECK(brep.passed);
  CHECK(brep.max_level_used() <= 5);

  // Selection is an argmax of the weights.
  Vec a(9), b(9);
  a << e(4, 0), e(5, 0);
  b << -e(4, 0), -e(5, 0);
  const auto sel = s34->select(a, b);
  REQUIRE(sel);
  CHECK(*sel == 1 * 3 + 2);
  for (std::size_t r = 0; r < 6; ++r) CHECK(s34->margin(r, a, b) <= s34->margin(*sel, a, b));
}

TEST_CASE("verification is deterministic") {
  auto p = even_sphere_planner(2);
  const auto a = verify_planner(*p, small(3000, 42));
  const auto b = verify_planner(*p, small(3000, 42));
  CHECK(a.max_endpoint_err == b.max_endpoint_err);
  CHECK(a.max_equivariance_defect == b.max_equivariance_defect);
  CHECK(a.rule_usage == b.rule_usage);
  CHECK(a.continuity[0].max_modulus == b.continuity[0].max_modulus);
  const auto c = verify_planner(*p, small(3000, 43));
  CHECK(a.continuity[0].max_modulus != c.continuity[0].max_modulus);
}

TEST_CASE("sphere points") {
  CHECK_NOTHROW(SpherePoint(e(3, 2)));
  CHECK_THROWS_AS(SpherePoint(Vec(Vec::Ones(3))), std::invalid_argument);
  CHECK(SpherePoint::parse_normalized("3,4").coords().isApprox((Vec(2) << 0.6, 0.8).finished()));
  CHECK_THROWS_AS(SpherePoint::parse_normalized("0,0"), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint::parse_normalized("1,x"), std::invalid_argument);
}
