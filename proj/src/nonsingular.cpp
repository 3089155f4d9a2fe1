#include "pps/nonsingular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace pps {

ConeVector::ConeVector(BlockDims dims, Vec flat) : dims_(std::move(dims)), flat_(std::move(flat)) {
  if (dims_.empty()) throw std::invalid_argument("cone vector needs at least one block");
  Eigen::Index at = 0;
  for (auto d : dims_) {
    if (d == 0) throw std::invalid_argument("empty block");
    offsets_.push_back(at);
    at += static_cast<Eigen::Index>(d);
  }
  if (at != flat_.size()) throw std::invalid_argument("cone vector size does not match its blocks");
}

ConeVector ConeVector::from_blocks(const std::vector<Vec>& blocks) {
  BlockDims dims;
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    dims.push_back(static_cast<std::size_t>(b.size()));
    total += b.size();
  }
  Vec flat(total);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    flat.segment(at, b.size()) = b;
    at += b.size();
  }
  return ConeVector(std::move(dims), std::move(flat));
}

Vec ConeVector::block(std::size_t i) const {
  return flat_.segment(offsets_.at(i), static_cast<Eigen::Index>(dims_[i]));
}

bool ConeVector::in_cone() const {
  double lo = block_norm(0), hi = lo;
  for (std::size_t i = 1; i < dims_.size(); ++i) {
    const double v = block_norm(i);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo <= kConeTolerance * std::max(1.0, hi);
}

std::size_t total_dim(const BlockDims& dims) {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

BlockDims parse_block_dims(const std::string& text) {
  BlockDims dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad block dimension '" + item + "'");
    const auto d = std::stoull(item);
    if (d == 0) throw std::invalid_argument("block dimensions must be positive");
    dims.push_back(d);
  }
  if (dims.empty()) throw std::invalid_argument("no block dimensions in '" + text + "'");
  return dims;
}

Vec BlackBoxMap::operator()(const Vec& x, const Vec& y) const {
  if (static_cast<std::size_t>(x.size()) != total_dim(left) || static_cast<std::size_t>(y.size()) != total_dim(right))
    throw std::invalid_argument(name + ": input has the wrong dimension");
  Vec out = fn(x, y);
  if (static_cast<std::size_t>(out.size()) != out_dim) throw std::logic_error(name + ": output has the wrong dimension");
  return out;
}

namespace {

bool is_power_of_two_size(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

Vec conjugate(const Vec& a) {
  Vec c = -a;
  c(0) = a(0);
  return c;
}

void require_cone(const ConeVector& v, const std::string& who) {
  if (!v.in_cone()) throw std::domain_error(who + ": input is not in the cone (unequal block norms)");
}

ConeVector as_cone(const BlockDims& dims, const Vec& flat, const std::string& who) {
  if (static_cast<std::size_t>(flat.size()) != total_dim(dims)) throw std::domain_error(who + ": wrong input dimension");
  return ConeVector(dims, flat);
}

Vec unit_blocks(const ConeVector& v) {
  Vec out = v.flat();
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < v.block_count(); ++i) {
    const auto d = static_cast<Eigen::Index>(v.dims()[i]);
    out.segment(at, d).normalize();
    at += d;
  }
  return out;
}

}  // namespace

Vec cayley_dickson_multiply(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || !is_power_of_two_size(a.size()))
    throw std::invalid_argument("Cayley-Dickson product needs equal 2-power dimensions");
  const Eigen::Index d = a.size();
  if (d == 1) return Vec::Constant(1, a(0) * b(0));
  const Eigen::Index h = d / 2;
  const Vec p = a.head(h), q = a.tail(h), r = b.head(h), s = b.tail(h);
  Vec out(d);
  out.head(h) = cayley_dickson_multiply(p, r) - cayley_dickson_multiply(conjugate(s), q);
  out.tail(h) = cayley_dickson_multiply(s, p) + cayley_dickson_multiply(q, conjugate(r));
  return out;
}

namespace {

BlackBoxMap algebra_map(const std::string& name, std::size_t d) {
  return {name, {d}, {d}, d, true, [](const Vec& x, const Vec& y) { return cayley_dickson_multiply(x, y); }};
}

}  // namespace

BlackBoxMap inner_product_map(std::size_t d) {
  return {"inner", {d}, {d}, 1, true, [](const Vec& x, const Vec& y) { return Vec::Constant(1, x.dot(y)); }};
}

std::vector<std::string> builtin_names() { return {"real", "complex", "quaternion", "octonion", "inner"}; }

BlackBoxMap builtin_map(const std::string& name) {
  if (name == "real") return algebra_map(name, 1);
  if (name == "complex") return algebra_map(name, 2);
  if (name == "quaternion") return algebra_map(name, 4);
  if (name == "octonion") return algebra_map(name, 8);
  if (name == "inner") return inner_product_map(2);
  throw std::invalid_argument("unknown map '" + name + "'");
}

BlackBoxMap from_classical(const BlackBoxMap& f, const BlockDims& n, const BlockDims& m) {
  if (n.empty() || m.empty() || total_dim(f.left) != n[0] || total_dim(f.right) != m[0])
    throw std::invalid_argument("from_classical: first blocks must match the classical map");
  const std::string name = "from_classical(" + f.name + ")";
  return {name, n, m, f.out_dim, f.biequivariant, [f, n, m, name](const Vec& x, const Vec& y) {
            const ConeVector cx = as_cone(n, x, name), cy = as_cone(m, y, name);
            require_cone(cx, name);
            require_cone(cy, name);
            return f(cx.block(0), cy.block(0));
          }};
}

BlackBoxMap sphere_map_from_classical(const BlackBoxMap& f, const BlockDims& n, const BlockDims& m) {
  if (n.empty() || m.empty() || total_dim(f.left) != n[0] || total_dim(f.right) != m[0])
    throw std::invalid_argument("sphere_map_from_classical: first blocks must match the classical map");
  const std::string name = "sphere(" + f.name + ")";
  return {name, n, m, f.out_dim, f.biequivariant, [f, name](const Vec& x, const Vec& y) {
            const auto nx = static_cast<Eigen::Index>(total_dim(f.left));
            const auto ny = static_cast<Eigen::Index>(total_dim(f.right));
            const Vec v = f(x.head(nx), y.head(ny));
            const double norm = v.norm();
            if (norm == 0) throw std::domain_error(name + ": classical map vanishes");
            return Vec(v / norm);
          }};
}

BlackBoxMap biradial_extend(const BlackBoxMap& g) {
  if (!g.biequivariant) throw std::invalid_argument("biradial_extend needs a biequivariant map");
  const std::string name = "biradial(" + g.name + ")";
  return {name, g.left, g.right, g.out_dim, true, [g, name](const Vec& x, const Vec& y) {
            const ConeVector cx = as_cone(g.left, x, name), cy = as_cone(g.right, y, name);
            require_cone(cx, name);
            require_cone(cy, name);
            if (cx.is_zero() || cy.is_zero()) return Vec(Vec::Zero(static_cast<Eigen::Index>(g.out_dim)));
            const double sr = std::sqrt(double(g.left.size())), ss = std::sqrt(double(g.right.size()));
            const double nx = cx.norm(), ny = cy.norm();
            return Vec((nx / sr) * (ny / ss) * g(sr * x / nx, ss * y / ny));
          }};
}

BlackBoxMap biradial_extend_v(const BlackBoxMap& g) {
  if (!g.biequivariant) throw std::invalid_argument("biradial_extend_v needs a biequivariant map");
  const std::string name = "biradial_v(" + g.name + ")";
  return {name, g.left, g.right, g.out_dim, true, [g, name](const Vec& x, const Vec& y) {
            const ConeVector cx = as_cone(g.left, x, name), cy = as_cone(g.right, y, name);
            double log_n = 0;
            for (const auto* c : {&cx, &cy}) {
              double sum = 0;
              for (std::size_t i = 0; i < c->block_count(); ++i) {
                const double b = c->block_norm(i);
                if (b == 0) return Vec(Vec::Zero(static_cast<Eigen::Index>(g.out_dim)));
                sum += std::log(b);
              }
              log_n += sum / double(c->block_count());
            }
            return Vec(std::exp(log_n) * g(unit_blocks(cx), unit_blocks(cy)));
          }};
}

Vec line_representative(const Vec& v) {
  const double norm = v.norm();
  if (norm == 0) throw std::domain_error("no line through the zero vector");
  Vec u = v / norm;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (std::abs(u(i)) > 1e-12) {
      if (u(i) < 0) u = -u;
      break;
    }
  return u;
}

Vec random_cone_vector(const BlockDims& dims, std::mt19937_64& rng, double block_norm) {
  std::normal_distribution<double> normal;
  Vec out(static_cast<Eigen::Index>(total_dim(dims)));
  Eigen::Index at = 0;
  for (auto d : dims) {
    const auto di = static_cast<Eigen::Index>(d);
    Vec b(di);
    do {
      for (auto& c : b) c = normal(rng);
    } while (b.norm() < 1e-8);
    out.segment(at, di) = block_norm * b.normalized();
    at += di;
  }
  return out;
}

std::optional<SignInconsistency> find_sign_inconsistency(const BlackBoxMap& f, const SignCheckOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> radius(0.25, 4.0);
  for (Nat k = 0; k < opt.samples; ++k) {
    const Vec x = random_cone_vector(f.left, rng, radius(rng));
    const Vec y = random_cone_vector(f.right, rng, radius(rng));
    const Vec v = f(x, y);
    const double scale = std::max(1.0, v.norm());
    if ((f(-x, y) + v).norm() > opt.tolerance * scale)
      return SignInconsistency(f.name + ": f(-x, y) != -f(x, y)", x, y);
    if ((f(x, -y) + v).norm() > opt.tolerance * scale)
      return SignInconsistency(f.name + ": f(x, -y) != -f(x, y)", x, y);
  }
  return std::nullopt;
}

BlackBoxMap induced_axial(const BlackBoxMap& f, const SignCheckOptions& opt) {
  if (auto bad = find_sign_inconsistency(f, opt)) throw *bad;
  return {"axial(" + f.name + ")", f.left, f.right, f.out_dim, true,
          [f](const Vec& x, const Vec& y) { return line_representative(f(x, y)); }};
}

namespace {

struct Candidate {
  double norm;
  Vec x, y;
  bool operator<(const Candidate& o) const { return norm < o.norm; }
};

// Keeps each block of z on its unit sphere.
void retract(Vec& z, const BlockDims& dims) {
  Eigen::Index at = 0;
  for (auto d : dims) {
    const auto di = static_cast<Eigen::Index>(d);
    z.segment(at, di).normalize();
    at += di;
  }
}

Eigen::MatrixXd tangent_projector(const Vec& z, const BlockDims& dims) {
  const Eigen::Index n = z.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index at = 0;
  for (auto d : dims) {
    const auto di = static_cast<Eigen::Index>(d);
    const Vec u = z.segment(at, di);
    p.block(at, at, di, di) = Eigen::MatrixXd::Identity(di, di) - u * u.transpose();
    at += di;
  }
  return p;
}

// Levenberg-Marquardt on |f(x, y)|^2 over the product of unit spheres.
Candidate descend(const BlackBoxMap& f, Candidate c, const NonsingularOptions& opt) {
  BlockDims dims = f.left;
  dims.insert(dims.end(), f.right.begin(), f.right.end());
  const auto nx = static_cast<Eigen::Index>(total_dim(f.left));
  const auto ny = static_cast<Eigen::Index>(total_dim(f.right));
  Vec z(nx + ny);
  z << c.x, c.y;
  auto residual = [&](const Vec& w) { return f(w.head(nx), w.tail(ny)); };
  Vec r = residual(z);
  double lambda = 1e-3;
  const double h = 1e-7;
  for (Nat it = 0; it < opt.max_iterations && r.norm() > opt.zero_threshold * 1e-6; ++it) {
    Eigen::MatrixXd jac(r.size(), z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      Vec zp = z, zm = z;
      zp(j) += h;
      zm(j) -= h;
      jac.col(j) = (residual(zp) - residual(zm)) / (2 * h);
    }
    const Eigen::MatrixXd proj = tangent_projector(z, dims);
    const Eigen::MatrixXd a = jac * proj;
    const Vec g = a.transpose() * r;
    if (g.norm() < 1e-300) break;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd m = a.transpose() * a;
      m.diagonal().array() += lambda;
      Vec step = proj * m.ldlt().solve(-g);
      Vec trial = z + step;
      retract(trial, dims);
      const Vec rt = residual(trial);
      if (rt.norm() < r.norm()) {
        z = trial;
        r = rt;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        break;
      }
      lambda *= 5;
    }
    if (!improved) break;
  }
  return {r.norm(), z.head(nx), z.tail(ny)};
}

}  // namespace

NonsingularResult check_nonsingular(const BlackBoxMap& f, const NonsingularOptions& opt) {
  NonsingularResult res;
  std::mt19937_64 rng(opt.seed);
  std::priority_queue<Candidate> worst;  // max-heap holding the smallest norms
  res.min_sampled_norm = std::numeric_limits<double>::infinity();
  for (Nat k = 0; k < opt.budget; ++k) {
    Vec x = random_cone_vector(f.left, rng);
    Vec y = random_cone_vector(f.right, rng);
    const double n = f(x, y).norm();
    ++res.samples;
    res.min_sampled_norm = std::min(res.min_sampled_norm, n);
    if (worst.size() < opt.descents) {
      worst.push({n, std::move(x), std::move(y)});
    } else if (opt.descents && n < worst.top().norm) {
      worst.pop();
      worst.push({n, std::move(x), std::move(y)});
    }
  }
  res.min_norm = res.min_sampled_norm;
  std::vector<Candidate> starts;
  while (!worst.empty()) {
    starts.push_back(worst.top());
    worst.pop();
  }
  std::reverse(starts.begin(), starts.end());
  std::optional<Candidate> best;
  for (auto& s : starts) {
    Candidate c = s.norm < opt.zero_threshold ? s : descend(f, s, opt);
    if (!best || c.norm < best->norm) best = c;
    if (best->norm < opt.zero_threshold) break;
  }
  if (best) res.min_norm = std::min(res.min_norm, best->norm);
  if (best && best->norm < opt.zero_threshold) {
    res.ok = false;
    res.counter_x = best->x;
    res.counter_y = best->y;
  }
  return res;
}

}  // namespace pps
