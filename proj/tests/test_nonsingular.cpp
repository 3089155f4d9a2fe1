#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pps/nonsingular.hpp"

using namespace pps;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

Vec random_vec(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> n;
  Vec v(d);
  for (auto& c : v) c = n(rng);
  return v;
}

}  // namespace

TEST_CASE("Cayley-Dickson products") {
  std::mt19937_64 rng(1);
  for (Eigen::Index d : {1, 2, 4, 8}) {
    for (int k = 0; k < 200; ++k) {
      const Vec a = random_vec(rng, d), b = random_vec(rng, d);
      CHECK(std::abs(cayley_dickson_multiply(a, b).norm() - a.norm() * b.norm()) < 1e-12 * (1 + a.norm() * b.norm()));
    }
  }
  // Complex multiplication.
  CHECK(cayley_dickson_multiply(v2(1, 2), v2(3, 4)).isApprox(v2(-5, 10)));
  // Quaternions: i j = k, j i = -k.
  const Vec i = Vec::Unit(4, 1), j = Vec::Unit(4, 2), k = Vec::Unit(4, 3);
  CHECK(cayley_dickson_multiply(i, j).isApprox(k));
  CHECK(cayley_dickson_multiply(j, i).isApprox(-k));
  // Octonions are not associative.
  const Vec a = Vec::Unit(8, 1), b = Vec::Unit(8, 2), c = Vec::Unit(8, 4);
  CHECK_FALSE(cayley_dickson_multiply(cayley_dickson_multiply(a, b), c)
                  .isApprox(cayley_dickson_multiply(a, cayley_dickson_multiply(b, c))));
  CHECK_THROWS_AS(cayley_dickson_multiply(Vec::Ones(3), Vec::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(builtin_map("sedenion"), std::invalid_argument);
}

TEST_CASE("cone vectors") {
  ConeVector x({2, 3}, (Vec(5) << 1, 0, 0, 0.6, 0.8).finished());
  CHECK(x.in_cone());
  CHECK(x.norm() == doctest::Approx(std::sqrt(2.0)));
  ConeVector y({2, 3}, (Vec(5) << 1, 0, 0, 0.6, 0.9).finished());
  CHECK_FALSE(y.in_cone());
  CHECK(ConeVector({2, 2}, Vec::Zero(4)).in_cone());
  CHECK_THROWS_AS(ConeVector({2, 2}, Vec::Zero(3)), std::invalid_argument);
  CHECK(parse_block_dims("2,4") == BlockDims{2, 4});
  CHECK_THROWS_AS(parse_block_dims("2,,4"), std::invalid_argument);
}

TEST_CASE("bi-radial extension of complex multiplication") {
  const auto cx = builtin_map("complex");
  const auto g = sphere_map_from_classical(cx, {2}, {2});
  const auto f = biradial_extend(g);
  for (double a : {0.0, 0.3, 2.0})
    for (double b : {0.1, -1.2}) {
      const Vec out = f(v2(std::cos(a), std::sin(a)), v2(std::cos(b), std::sin(b)));
      CHECK((out - v2(std::cos(a + b), std::sin(a + b))).norm() < 1e-12);
    }
  CHECK(f(Vec::Zero(2), v2(1, 0)).norm() == 0);
  CHECK(f(v2(1, 0), Vec::Zero(2)).norm() == 0);
}

TEST_CASE("bi-radial homogeneity and continuity at 0") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  struct Case {
    std::string map;
    BlockDims n, m;
  };
  for (const Case& c : {Case{"complex", {2, 2}, {2, 3}}, Case{"quaternion", {4, 6}, {4}},
                        Case{"octonion", {8, 2, 2}, {8, 4}}}) {
    CAPTURE(c.map);
    const auto g = sphere_map_from_classical(builtin_map(c.map), c.n, c.m);
    const auto f = biradial_extend(g);
    const double rs = std::sqrt(double(c.n.size() * c.m.size()));
    for (int k = 0; k < 300; ++k) {
      const Vec x = random_cone_vector(c.n, rng, std::abs(scale(rng)) + 0.1);
      const Vec y = random_cone_vector(c.m, rng, std::abs(scale(rng)) + 0.1);
      const double l = scale(rng), mu = scale(rng);
      const Vec fx = f(x, y);
      CHECK((f(l * x, mu * y) - l * mu * fx).norm() < 1e-9 * (1 + std::abs(l * mu) * fx.norm()));
      CHECK(fx.norm() <= x.norm() * y.norm() / rs * (1 + 1e-12));
    }
    const Vec off_cone = Vec::Unit(static_cast<Eigen::Index>(total_dim(c.n)), 0);
    CHECK_THROWS_AS(f(off_cone, random_cone_vector(c.m, rng)), std::domain_error);
  }
  BlackBoxMap plain = builtin_map("complex");
  plain.biequivariant = false;
  CHECK_THROWS_AS(biradial_extend(plain), std::invalid_argument);
}

TEST_CASE("V-variant") {
  const BlockDims n = {2, 2}, m = {2};
  const auto g = sphere_map_from_classical(builtin_map("complex"), n, m);
  const auto f = biradial_extend_v(g);
  Vec x(4);
  x << 0.6, 0.8, 0, 0;
  CHECK(f(x, v2(1, 0)).norm() == 0);
  x << 0.6, 0.8, 1, 0;
  CHECK((f(x, v2(0, 1)) - g(x, v2(0, 1))).norm() < 1e-15);
  Vec scaled = x;
  scaled.tail(2) *= 9.0;
  CHECK((f(scaled, v2(0, 1)) - 3.0 * f(x, v2(0, 1))).norm() < 1e-12);  // t^{1/r} with r = 2
  Vec y3 = v2(0, 1) * 8.0;
  CHECK((f(x, y3) - 8.0 * f(x, v2(0, 1))).norm() < 1e-12);             // s = 1
}

TEST_CASE("classical maps lifted to cones") {
  std::mt19937_64 rng(9);
  const auto fc = from_classical(builtin_map("complex"), {2, 4}, {2, 2});
  for (int k = 0; k < 1000; ++k)
    CHECK(fc(random_cone_vector({2, 4}, rng, 0.5), random_cone_vector({2, 2}, rng, 2.0)).norm() > 0.5);
  const auto fq = from_classical(builtin_map("quaternion"), {4, 6}, {4, 6});
  for (int k = 0; k < 1000; ++k)
    CHECK(fq(random_cone_vector({4, 6}, rng), random_cone_vector({4, 6}, rng)).norm() == doctest::Approx(1.0));
  const auto fr = from_classical(builtin_map("real"), {1}, {1});
  CHECK(fr(Vec::Constant(1, 2.0), Vec::Constant(1, -3.0))(0) == -6.0);
  CHECK_THROWS_AS(from_classical(builtin_map("complex"), {3}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(fc((Vec(6) << 1, 0, 0, 0, 0, 2).finished(), random_cone_vector({2, 2}, rng)), std::domain_error);
}

TEST_CASE("induced axial maps") {
  const auto q = from_classical(builtin_map("quaternion"), {4, 6}, {4});
  const auto axial = induced_axial(q);
  std::mt19937_64 rng(4);
  const auto classical = induced_axial(builtin_map("quaternion"));
  for (int k = 0; k < 200; ++k) {
    const Vec x = random_cone_vector({4, 6}, rng), y = random_cone_vector({4}, rng);
    const Vec line = axial(x, y);
    CHECK((axial(-x, y) - line).norm() < 1e-12);
    CHECK((axial(x, -y) - line).norm() < 1e-12);
    CHECK((classical(x.head(4), y) - line).norm() < 1e-12);
  }
  CHECK_NOTHROW(induced_axial(from_classical(builtin_map("complex"), {2, 2}, {2, 2})));

  BlackBoxMap bad{"square", {2}, {2}, 2, true, [](const Vec& x, const Vec& y) {
                    return Vec(cayley_dickson_multiply(x, y) + Vec::Constant(2, x(0) * x(0)));
                  }};
  REQUIRE(find_sign_inconsistency(bad));
  try {
    induced_axial(bad);
    FAIL("expected a sign inconsistency");
  } catch (const SignInconsistency& e) {
    CHECK(e.x.size() == 2);
    CHECK((bad(-e.x, e.y) + bad(e.x, e.y)).norm() > 1e-9);
  }
  CHECK(line_representative(v2(-2, 0)).isApprox(v2(1, 0)));
  CHECK_THROWS_AS(line_representative(Vec::Zero(2)), std::domain_error);
}

TEST_CASE("non-singularity checks") {
  NonsingularOptions opt;
  opt.budget = 20000;
  const auto inner = check_nonsingular(builtin_map("inner"), opt);
  CHECK_FALSE(inner.ok);
  REQUIRE(inner.counter_x);
  CHECK(std::abs(inner.counter_x->dot(*inner.counter_y)) < 1e-8);
  CHECK(inner.counter_x->norm() == doctest::Approx(1.0));
  CHECK(inner.counter_y->norm() == doctest::Approx(1.0));
  for (const char* name : {"real", "complex", "quaternion", "octonion"}) {
    CAPTURE(name);
    const auto r = check_nonsingular(builtin_map(name), opt);
    CHECK(r.ok);
    CHECK(r.min_norm == doctest::Approx(1.0));
  }
  // A lifted map with a genuine zero: projection of a product onto one coordinate.
  BlackBoxMap proj{"first", {2}, {2}, 1, true,
                   [](const Vec& x, const Vec& y) { return Vec::Constant(1, cayley_dickson_multiply(x, y)(0)); }};
  CHECK_FALSE(check_nonsingular(proj, opt).ok);
}
