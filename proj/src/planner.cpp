#include "pps/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pps {

// ---- points and paths ------------------------------------------------------

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw std::invalid_argument("sphere point needs at least 2 coordinates");
  if (std::abs(coords_.norm() - 1.0) > kSphereTolerance)
    throw std::invalid_argument("sphere point is not a unit vector");
}

SpherePoint SpherePoint::parse_normalized(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coordinate '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad coordinate '" + item + "'");
    xs.push_back(v);
  }
  Vec c = Eigen::Map<Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  const double norm = c.norm();
  if (!(norm > 0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize '" + text + "'");
  return SpherePoint(c / norm);
}

namespace {

// The component of v orthogonal to the unit vector p, two Gram-Schmidt passes.
Vec orthogonal_part(const Vec& v, const Vec& p) {
  Vec u = v - v.dot(p) * p;
  u -= u.dot(p) * p;
  return u;
}

}  // namespace

ArcChain& ArcChain::geodesic_to(const Vec& to) {
  const Vec from = end();
  const Vec u = orthogonal_part(to, from);
  const double s = u.norm();
  const double angle = 2 * std::atan2((to - from).norm(), (to + from).norm());
  if (s == 0 || angle == 0) {
    if (from.dot(to) < 0) throw std::domain_error("geodesic between antipodal points");
    return *this;
  }
  Arc arc{from, u / s, angle};
  length_ += arc.angle;
  arcs_.push_back(std::move(arc));
  return *this;
}

ArcChain& ArcChain::half_circle(const Vec& dir) {
  const Vec from = end();
  const Vec u = orthogonal_part(dir, from);
  const double s = u.norm();
  if (s == 0) throw std::domain_error("half circle needs a tangent direction");
  Arc arc{from, u / s, std::numbers::pi};
  length_ += arc.angle;
  arcs_.push_back(std::move(arc));
  return *this;
}

Vec ArcChain::end() const {
  if (arcs_.empty()) return origin_;
  const Arc& a = arcs_.back();
  return std::cos(a.angle) * a.start + std::sin(a.angle) * a.tangent;
}

Vec ArcChain::evaluate(double t) const {
  if (length_ == 0) return origin_;
  double s = std::clamp(t, 0.0, 1.0) * length_;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (s <= a.angle || i + 1 == arcs_.size()) {
      s = std::min(s, a.angle);
      return std::cos(s) * a.start + std::sin(s) * a.tangent;
    }
    s -= a.angle;
  }
  return origin_;
}

Path Path::concat(const Path& a, const Path& b) {
  std::vector<ArcChain> blocks = a.blocks_;
  blocks.insert(blocks.end(), b.blocks_.begin(), b.blocks_.end());
  return Path(std::move(blocks));
}

Vec Path::evaluate(double t) const {
  Eigen::Index total = 0;
  std::vector<Vec> parts;
  parts.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    parts.push_back(b.evaluate(t));
    total += parts.back().size();
  }
  Vec out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

// ---- planner base ----------------------------------------------------------

std::optional<std::size_t> Planner::select(const Vec& a, const Vec& b) const {
  for (std::size_t r = 0; r < rule_count(); ++r)
    if (member(r, a, b)) return r;
  return std::nullopt;
}

std::size_t Planner::ambient_dim() const {
  std::size_t d = 0;
  for (auto b : block_dims()) d += b;
  return d;
}

Nat Planner::max_level() const {
  Nat m = 0;
  for (std::size_t r = 0; r < rule_count(); ++r) m = std::max(m, level(r));
  return m;
}

namespace {

void require_domain(const Planner& p, std::size_t rule, const Vec& a, const Vec& b) {
  if (rule >= p.rule_count()) throw std::out_of_range("rule index out of range");
  if (!p.member(rule, a, b)) throw std::domain_error("pair outside the domain of rule " + std::to_string(rule));
}

Path single(ArcChain chain) { return Path({std::move(chain)}); }

class OddSpherePlanner final : public Planner {
 public:
  explicit OddSpherePlanner(Nat n) : n_(n) {}
  std::string name() const override { return "odd_sphere(" + std::to_string(n_) + ")"; }
  std::size_t rule_count() const override { return 2; }
  std::vector<std::size_t> block_dims() const override { return {static_cast<std::size_t>(n_ + 1)}; }
  Vec anchor() const override { return Vec::Unit(static_cast<Eigen::Index>(n_ + 1), 0); }

  double margin(std::size_t rule, const Vec& a, const Vec& b) const override {
    // 1 + <a,b> and 1 - <a,b>, in a form that vanishes exactly at b = -a and b = a.
    switch (rule) {
      case 0: return (a + b).squaredNorm() / 2;
      case 1: return (a - b).squaredNorm() / 2;
      default: throw std::out_of_range("rule index out of range");
    }
  }

  Path section(std::size_t rule, const Vec& a, const Vec& b) const override {
    require_domain(*this, rule, a, b);
    ArcChain chain(a);
    if (rule == 0) return single(std::move(chain.geodesic_to(b)));
    chain.half_circle(odd_field(a)).geodesic_to(b);
    return single(std::move(chain));
  }

 private:
  Nat n_;
};

class EvenSpherePlanner final : public Planner {
 public:
  EvenSpherePlanner(Nat n, Vec pole, double w) : n_(n), c_(std::move(pole)), w_(w) {
    const auto d = static_cast<Eigen::Index>(n + 1);
    const Vec u = Vec::Unit(d, 0) - c_;
    h_ = Eigen::MatrixXd::Identity(d, d);
    if (u.norm() > 1e-15) h_ -= 2 * u * u.transpose() / u.squaredNorm();
    e1_ = h_.col(1);
  }

  std::string name() const override { return "even_sphere(" + std::to_string(n_) + ")"; }
  std::size_t rule_count() const override { return 3; }
  std::vector<std::size_t> block_dims() const override { return {static_cast<std::size_t>(n_ + 1)}; }
  Vec anchor() const override { return c_; }

  double margin(std::size_t rule, const Vec& a, const Vec& b) const override {
    const double plus = (a + b).squaredNorm() / 2;            // 1 + <a,b>
    const double minus = (a - b).squaredNorm() / 2;           // 1 - <a,b>
    // 1 - <a,C>^2, floored so that rounding residue at +-C counts as on the pole.
    double off_pole = field(a).squaredNorm();
    if (off_pole < kSphereTolerance * kSphereTolerance) off_pole = 0;
    switch (rule) {
      case 0: return plus;
      case 1: return std::min(minus, off_pole);
      case 2: return std::max(0.0, std::min(w_ * w_ - plus, w_ * w_ - off_pole));
      default: throw std::out_of_range("rule index out of range");
    }
  }

  Path section(std::size_t rule, const Vec& a, const Vec& b) const override {
    require_domain(*this, rule, a, b);
    ArcChain chain(a);
    if (rule == 0) return single(std::move(chain.geodesic_to(b)));
    if (rule == 1) {
      chain.half_circle(h_ * field(a)).geodesic_to(b);
      return single(std::move(chain));
    }
    if (a.dot(c_) > 0)
      chain.geodesic_to(c_).half_circle(e1_).geodesic_to(b);
    else
      chain.geodesic_to(-c_).half_circle(-e1_).geodesic_to(b);
    return single(std::move(chain));
  }

 private:
  // v'(A) unnormalized, in the frame with C = e0. Zero exactly when the
  // rule-1 margin is.
  Vec field(const Vec& a) const { return even_field_numerator(h_ * a); }

  Nat n_;
  Vec c_;
  double w_;
  Eigen::MatrixXd h_;  // Householder reflection with h_ e0 = C
  Vec e1_;
};

class ProductPlanner final : public Planner {
 public:
  ProductPlanner(PlannerPtr p, PlannerPtr q)
      : p_(std::move(p)), q_(std::move(q)),
        pd_(static_cast<Eigen::Index>(p_->ambient_dim())),
        qd_(static_cast<Eigen::Index>(q_->ambient_dim())) {}

  std::string name() const override { return p_->name() + " x " + q_->name(); }
  std::size_t rule_count() const override { return p_->rule_count() * q_->rule_count(); }
  std::vector<std::size_t> block_dims() const override {
    auto d = p_->block_dims();
    auto e = q_->block_dims();
    d.insert(d.end(), e.begin(), e.end());
    return d;
  }
  Vec anchor() const override { return join(p_->anchor(), q_->anchor()); }
  Nat level(std::size_t rule) const override {
    return p_->level(rule / q_->rule_count()) + q_->level(rule % q_->rule_count());
  }

  double margin(std::size_t rule, const Vec& a, const Vec& b) const override {
    if (rule >= rule_count()) throw std::out_of_range("rule index out of range");
    const auto f = weights(*p_, a.head(pd_), b.head(pd_));
    const auto g = weights(*q_, a.tail(qd_), b.tail(qd_));
    return f[rule / q_->rule_count()] * g[rule % q_->rule_count()];
  }

  std::optional<std::size_t> select(const Vec& a, const Vec& b) const override {
    const auto f = weights(*p_, a.head(pd_), b.head(pd_));
    const auto g = weights(*q_, a.tail(qd_), b.tail(qd_));
    std::optional<std::size_t> best;
    double best_w = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (f[i] * g[j] > best_w) {
          best_w = f[i] * g[j];
          best = i * g.size() + j;
        }
    return best;
  }

  Path section(std::size_t rule, const Vec& a, const Vec& b) const override {
    require_domain(*this, rule, a, b);
    const std::size_t i = rule / q_->rule_count();
    const std::size_t j = rule % q_->rule_count();
    return Path::concat(p_->section(i, a.head(pd_), b.head(pd_)), q_->section(j, a.tail(qd_), b.tail(qd_)));
  }

 private:
  static Vec join(const Vec& x, const Vec& y) {
    Vec out(x.size() + y.size());
    out << x, y;
    return out;
  }

  // Normalized positive parts of the factor margins.
  static std::vector<double> weights(const Planner& p, const Vec& a, const Vec& b) {
    std::vector<double> m(p.rule_count());
    double sum = 0;
    for (std::size_t r = 0; r < m.size(); ++r) {
      m[r] = std::max(0.0, p.margin(r, a, b));
      sum += m[r];
    }
    if (sum > 0)
      for (auto& v : m) v /= sum;
    return m;
  }

  PlannerPtr p_, q_;
  Eigen::Index pd_, qd_;
};

class RestrictedPlanner final : public Planner {
 public:
  RestrictedPlanner(PlannerPtr base, std::vector<std::size_t> keep) : base_(std::move(base)), keep_(std::move(keep)) {
    for (auto r : keep_)
      if (r >= base_->rule_count()) throw std::out_of_range("kept rule index out of range");
  }

  std::string name() const override {
    std::string s = base_->name() + " rules {";
    for (std::size_t i = 0; i < keep_.size(); ++i) s += (i ? "," : "") + std::to_string(keep_[i]);
    return s + "}";
  }
  std::size_t rule_count() const override { return keep_.size(); }
  std::vector<std::size_t> block_dims() const override { return base_->block_dims(); }
  Vec anchor() const override { return base_->anchor(); }
  Nat level(std::size_t rule) const override { return base_->level(keep_.at(rule)); }
  double margin(std::size_t rule, const Vec& a, const Vec& b) const override {
    return base_->margin(keep_.at(rule), a, b);
  }
  Path section(std::size_t rule, const Vec& a, const Vec& b) const override {
    return base_->section(keep_.at(rule), a, b);
  }

 private:
  PlannerPtr base_;
  std::vector<std::size_t> keep_;
};

}  // namespace

PlannerPtr odd_sphere_planner(Nat n) {
  if (n == 0 || n % 2 == 0) throw std::domain_error("odd_sphere_planner needs odd n >= 1");
  return std::make_shared<OddSpherePlanner>(n);
}

PlannerPtr even_sphere_planner(Nat n, std::optional<Vec> pole, double cap_radius) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("even_sphere_planner needs even n >= 2");
  if (!(cap_radius > 0 && cap_radius < std::numbers::pi / 4))
    throw std::domain_error("cap radius must lie in (0, pi/4)");
  Vec c = pole ? *pole : Vec::Unit(static_cast<Eigen::Index>(n + 1), 0);
  if (c.size() != static_cast<Eigen::Index>(n + 1)) throw std::domain_error("pole has the wrong dimension");
  try {
    SpherePoint check(c);
  } catch (const std::invalid_argument& e) {
    throw std::domain_error(std::string("pole: ") + e.what());
  }
  return std::make_shared<EvenSpherePlanner>(n, std::move(c), cap_radius);
}

PlannerPtr sphere_planner(Nat n) { return n % 2 ? odd_sphere_planner(n) : even_sphere_planner(n); }

PlannerPtr product_planner(PlannerPtr p, PlannerPtr q) {
  if (!p || !q) throw std::invalid_argument("product_planner: null factor");
  return std::make_shared<ProductPlanner>(std::move(p), std::move(q));
}

PlannerPtr restrict_rules(PlannerPtr base, std::vector<std::size_t> keep) {
  if (!base) throw std::invalid_argument("restrict_rules: null planner");
  return std::make_shared<RestrictedPlanner>(std::move(base), std::move(keep));
}

Nat tc_g_sphere(Nat n) {
  if (n == 0) throw std::domain_error("tc_g_sphere needs n >= 1");
  return n % 2 ? 1 : 2;
}

Nat tc_g_product_bound(const std::vector<Nat>& values) {
  Nat s = 0;
  for (auto v : values) s += v;
  return s;
}

Nat tc_upper_borel(Nat tcg_fiber, Nat tc_base) { return (tcg_fiber + 1) * (tc_base + 1) - 1; }

// ---- verification ----------------------------------------------------------

Nat VerificationReport::max_level_used() const {
  Nat m = 0;
  for (std::size_t l = 0; l < level_histogram.size(); ++l)
    if (level_histogram[l]) m = l;
  return m;
}

std::size_t VerificationReport::rules_used() const {
  return static_cast<std::size_t>(std::count_if(rule_usage.begin(), rule_usage.end(), [](Nat c) { return c > 0; }));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Family { uniform, antipodal, pole, equator, identical };

const char* family_name(Family f) {
  switch (f) {
    case Family::uniform: return "uniform";
    case Family::antipodal: return "antipodal";
    case Family::pole: return "pole";
    case Family::equator: return "equator";
    case Family::identical: return "identical";
  }
  return "?";
}

class Sampler {
 public:
  Sampler(const Planner& p, std::uint64_t seed) : dims_(p.block_dims()), anchor_(p.anchor()), rng_(seed) {}

  Vec unit(std::size_t d) {
    Vec v(static_cast<Eigen::Index>(d));
    do {
      for (auto& x : v) x = normal_(rng_);
    } while (v.norm() < 1e-8);
    return v.normalized();
  }

  // Fills a, b block by block for the given family; k cycles through variants.
  void draw(Family f, Nat k, Vec& a, Vec& b) {
    const auto total = static_cast<Eigen::Index>(anchor_.size());
    a.resize(total);
    b.resize(total);
    Eigen::Index at = 0;
    for (auto d : dims_) {
      const auto di = static_cast<Eigen::Index>(d);
      Vec x, y;
      const Vec c = anchor_.segment(at, di);
      switch (f) {
        case Family::uniform:
          x = unit(d);
          y = unit(d);
          break;
        case Family::antipodal:
          x = unit(d);
          y = -x;
          break;
        case Family::identical:
          x = unit(d);
          y = x;
          break;
        case Family::pole: {
          const double sign = (k % 2) ? -1.0 : 1.0;
          const bool exact = k % 8 < 2;
          const double eps = exact ? 0.0 : std::pow(10.0, -12.0 + 11.0 * uniform_(rng_));
          const double eps2 = exact ? 0.0 : std::pow(10.0, -12.0 + 11.0 * uniform_(rng_));
          x = (sign * c + eps * unit(d)).normalized();
          y = (-x + eps2 * unit(d)).normalized();
          break;
        }
        case Family::equator: {
          Vec r;
          do {
            r = unit(d);
            r -= r.dot(c) * c;
          } while (r.norm() < 1e-6);
          x = r.normalized();
          switch (k % 3) {
            case 0: y = -x; break;
            case 1: y = x; break;
            default: y = unit(d);
          }
          break;
        }
      }
      a.segment(at, di) = x;
      b.segment(at, di) = y;
      at += di;
    }
  }

  // A point within distance delta of x, blockwise on the sphere.
  Vec perturb(const Vec& x, double delta) {
    Vec out = x;
    Eigen::Index at = 0;
    for (auto d : dims_) {
      const auto di = static_cast<Eigen::Index>(d);
      out.segment(at, di) = (x.segment(at, di) + delta * unit(d)).normalized();
      at += di;
    }
    return out;
  }

 private:
  std::vector<std::size_t> dims_;
  Vec anchor_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

constexpr int kTimes = 11;
constexpr Nat kChunk = 4096;

double offsphere(const Vec& p, const std::vector<std::size_t>& dims) {
  double worst = 0;
  Eigen::Index at = 0;
  for (auto d : dims) {
    const auto di = static_cast<Eigen::Index>(d);
    worst = std::max(worst, std::abs(p.segment(at, di).norm() - 1.0));
    at += di;
  }
  return worst;
}

}  // namespace

VerificationReport verify_planner(const Planner& planner, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.planner = planner.name();
  const std::size_t rules = planner.rule_count();
  const auto dims = planner.block_dims();
  rep.rule_usage.assign(rules, 0);
  rep.continuity.assign(rules, ContinuityStat{});
  rep.level_histogram.assign(planner.max_level() + 1, 0);
  std::vector<double> modulus_sum(rules, 0);

  struct Batch {
    Family family;
    Nat count;
  };
  const std::vector<Batch> batches = {{Family::uniform, opt.samples},
                                      {Family::antipodal, opt.adversarial},
                                      {Family::pole, opt.adversarial},
                                      {Family::equator, opt.adversarial},
                                      {Family::identical, opt.adversarial}};
  Nat total = 0;
  for (const auto& b : batches) total += b.count;
  const Nat probe_step = opt.continuity_probes ? std::max<Nat>(1, total / opt.continuity_probes) : 0;
  Nat probes_done = 0;

  auto witness = [&](Family f, const std::string& reason, const Vec& a, const Vec& b) {
    if (rep.witnesses.size() < opt.max_witnesses) rep.witnesses.push_back({family_name(f), reason, a, b});
  };

  Nat index = 0;
  Nat stream = 0;
  Vec a, b;
  for (const auto& batch : batches) {
    for (Nat start = 0; start < batch.count; start += kChunk, ++stream) {
      Sampler sampler(planner, splitmix64(opt.seed ^ splitmix64(stream)));
      const Nat end = std::min(batch.count, start + kChunk);
      for (Nat k = start; k < end; ++k, ++index) {
        sampler.draw(batch.family, k, a, b);
        ++rep.samples;
        const Vec na = -a, nb = -b;
        for (std::size_t r = 0; r < rules; ++r) {
          const bool in = planner.member(r, a, b);
          if (in != planner.member(r, na, nb)) {
            ++rep.invariance_violations;
            witness(batch.family, "domain of rule " + std::to_string(r) + " not invariant", a, b);
          }
          if (!in) continue;
          const Path p = planner.section(r, a, b);
          const Path q = planner.section(r, na, nb);
          rep.max_endpoint_err = std::max({rep.max_endpoint_err, (p.evaluate(0) - a).norm(), (p.evaluate(1) - b).norm()});
          for (int i = 0; i < kTimes; ++i) {
            const double t = i / double(kTimes - 1);
            const Vec pt = p.evaluate(t);
            rep.max_offsphere = std::max(rep.max_offsphere, offsphere(pt, dims));
            rep.max_equivariance_defect = std::max(rep.max_equivariance_defect, (q.evaluate(t) + pt).norm());
          }
        }
        const auto sel = planner.select(a, b);
        if (!sel) {
          witness(batch.family, "no rule covers the pair", a, b);
          continue;
        }
        ++rep.covered;
        ++rep.rule_usage[*sel];
        ++rep.level_histogram[planner.level(*sel)];

        const double delta = opt.tol.continuity_delta;
        if (probe_step && index % probe_step == 0 && probes_done < opt.continuity_probes &&
            planner.margin(*sel, a, b) > 10 * delta) {
          const Vec a2 = sampler.perturb(a, delta), b2 = sampler.perturb(b, delta);
          if (!planner.member(*sel, a2, b2)) continue;
          ++probes_done;
          const Path p = planner.section(*sel, a, b);
          const Path p2 = planner.section(*sel, a2, b2);
          double worst = 0;
          for (int i = 0; i < kTimes; ++i) {
            const double t = i / double(kTimes - 1);
            worst = std::max(worst, (p2.evaluate(t) - p.evaluate(t)).norm() / delta);
          }
          auto& st = rep.continuity[*sel];
          ++st.probes;
          st.max_modulus = std::max(st.max_modulus, worst);
          modulus_sum[*sel] += worst;
          if (worst > opt.tol.continuity_modulus) witness(batch.family, "discontinuous section", a, b);
        }
      }
    }
  }

  for (std::size_t r = 0; r < rules; ++r)
    if (rep.continuity[r].probes) rep.continuity[r].mean_modulus = modulus_sum[r] / double(rep.continuity[r].probes);
  rep.coverage = rep.samples ? double(rep.covered) / double(rep.samples) : 1.0;

  auto fail = [&](const std::string& what, double value, double tol) {
    std::ostringstream os;
    os << what << " " << value << " exceeds " << tol;
    rep.failures.push_back(os.str());
  };
  if (rep.covered < rep.samples)
    rep.failures.push_back("coverage " + std::to_string(rep.covered) + "/" + std::to_string(rep.samples));
  if (rep.max_endpoint_err > opt.tol.endpoint) fail("endpoint error", rep.max_endpoint_err, opt.tol.endpoint);
  if (rep.max_offsphere > opt.tol.offsphere) fail("off-sphere error", rep.max_offsphere, opt.tol.offsphere);
  if (rep.max_equivariance_defect > opt.tol.equivariance)
    fail("equivariance defect", rep.max_equivariance_defect, opt.tol.equivariance);
  if (rep.invariance_violations) rep.failures.push_back("rule domains not invariant");
  for (std::size_t r = 0; r < rules; ++r)
    if (rep.continuity[r].max_modulus > opt.tol.continuity_modulus)
      fail("continuity modulus of rule " + std::to_string(r), rep.continuity[r].max_modulus, opt.tol.continuity_modulus);
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace pps
