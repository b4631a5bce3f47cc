#include "pdopt/proxcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdopt {

double BregmanDistance::value(const Vector& x, const Vector& y) const {
  if (x.size() != y.size()) throw std::invalid_argument("bregman_value: length mismatch");
  if (kind == BregmanKind::euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - y[i];
      s += 0.5 * d * d;
    }
    return s;
  }
  // KL divergence sum x ln(x/y) - x + y; domain is the open positive orthant.
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::domain_error("bregman_value: entropy kind requires strictly positive entries");
    s += x[i] * std::log(x[i] / y[i]) - x[i] + y[i];
  }
  return s;
}

double bregman_value(const BregmanDistance& d, const Vector& x, const Vector& y) {
  return d.value(x, y);
}

// ---------------------------------------------------------------------------
// SetDescriptor
// ---------------------------------------------------------------------------

SetDescriptor SetDescriptor::point(Vector b) {
  SetDescriptor s;
  s.kind_ = Kind::point;
  s.anchor_ = std::move(b);
  return s;
}

SetDescriptor SetDescriptor::nonneg_orthant() {
  SetDescriptor s;
  s.kind_ = Kind::nonneg_orthant;
  return s;
}

SetDescriptor SetDescriptor::box(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("SetDescriptor::box: lo/hi length mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("SetDescriptor::box: empty box");
  SetDescriptor s;
  s.kind_ = Kind::box;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

SetDescriptor SetDescriptor::l2ball(double radius) {
  if (radius < 0.0) throw std::invalid_argument("SetDescriptor::l2ball: negative radius");
  SetDescriptor s;
  s.kind_ = Kind::l2ball;
  s.radius_ = radius;
  return s;
}

SetDescriptor SetDescriptor::affine_zero() {
  SetDescriptor s;
  s.kind_ = Kind::affine_zero;
  return s;
}

SetDescriptor SetDescriptor::simplex() {
  SetDescriptor s;
  s.kind_ = Kind::simplex;
  return s;
}

namespace {

// Radial scaling with a correction pass so the output's recomputed norm
// never exceeds the radius; keeps project(project(u)) == project(u).
Vector project_ball(const Vector& u, double radius) {
  double n = nrm2(u);
  if (n <= radius) return u;
  Vector s = u;
  double cur = n;
  for (int it = 0; it < 8 && cur > radius; ++it) {
    s = scaled(s, radius / cur);
    cur = nrm2(s);
  }
  return s;
}

}  // namespace

Vector project_simplex(const Vector& u) {
  const std::size_t p = u.size();
  // Fixed-point shortcut: outputs of this routine are entrywise >= 0 with
  // unit sum to 1e-12, so anything already in that band projects to itself.
  {
    bool nonneg = true;
    double s = 0.0;
    for (double v : u) {
      if (v < 0.0) {
        nonneg = false;
        break;
      }
      s += v;
    }
    if (nonneg && std::fabs(s - 1.0) <= 1e-12) return u;
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  double csum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    csum += u[order[j]];
    double t = (csum - 1.0) / static_cast<double>(j + 1);
    if (u[order[j]] - t > 0.0) theta = t;
  }
  Vector x(p);
  for (std::size_t i = 0; i < p; ++i) x[i] = std::max(0.0, u[i] - theta);
  return x;
}

Vector SetDescriptor::project(const Vector& u) const {
  switch (kind_) {
    case Kind::point:
      if (u.size() != anchor_.size()) throw std::invalid_argument("project: dimension mismatch");
      return anchor_;
    case Kind::affine_zero:
      return Vector(u.size(), 0.0);
    case Kind::nonneg_orthant: {
      Vector r(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) r[i] = std::max(0.0, u[i]);
      return r;
    }
    case Kind::box: {
      if (u.size() != lo_.size()) throw std::invalid_argument("project: dimension mismatch");
      Vector r(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) r[i] = std::min(hi_[i], std::max(lo_[i], u[i]));
      return r;
    }
    case Kind::l2ball:
      return project_ball(u, radius_);
    case Kind::simplex:
      return project_simplex(u);
  }
  throw std::logic_error("project: unknown set kind");
}

double SetDescriptor::dist_to_set(const Vector& u) const {
  if (kind_ == Kind::affine_zero) return nrm2(u);
  if (kind_ == Kind::l2ball) {
    double n = nrm2(u);
    return n <= radius_ ? 0.0 : n - radius_;
  }
  return dist2(u, project(u));
}

double SetDescriptor::support(const Vector& y) const {
  switch (kind_) {
    case Kind::point:
      if (y.size() != anchor_.size()) throw std::invalid_argument("support: dimension mismatch");
      return dot(anchor_, y);
    case Kind::affine_zero:
      return 0.0;
    case Kind::nonneg_orthant:
      for (double v : y)
        if (v > 0.0) return infinity();
      return 0.0;
    case Kind::box: {
      if (y.size() != lo_.size()) throw std::invalid_argument("support: dimension mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) continue;  // sup of 0*x is 0 even on unbounded edges
        s += std::max(lo_[i] * y[i], hi_[i] * y[i]);
      }
      return s;
    }
    case Kind::l2ball:
      return radius_ * nrm2(y);
    case Kind::simplex: {
      double m = -infinity();
      for (double v : y) m = std::max(m, v);
      return m;
    }
  }
  throw std::logic_error("support: unknown set kind");
}

Vector SetDescriptor::project_polar(const Vector& u) const {
  switch (kind_) {
    case Kind::affine_zero:
      return u;  // polar of {0} is all of R^n
    case Kind::nonneg_orthant: {
      Vector r(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) r[i] = std::min(0.0, u[i]);
      return r;
    }
    default:
      throw CapabilityError("project_polar: set is not a supported cone");
  }
}

// ---------------------------------------------------------------------------
// ProximableTerm
// ---------------------------------------------------------------------------

ProximableTerm ProximableTerm::weighted_l1(double lambda, std::size_t dim) {
  if (lambda < 0.0) throw std::invalid_argument("weighted_l1: negative weight");
  ProximableTerm t;
  t.form_ = Form::weighted_l1;
  t.dim_ = dim;
  t.lambda_ = lambda;
  return t;
}

ProximableTerm ProximableTerm::linear_plus_nonneg(Vector c) {
  ProximableTerm t;
  t.form_ = Form::linear_plus_nonneg;
  t.dim_ = c.size();
  t.anchor_ = std::move(c);
  return t;
}

ProximableTerm ProximableTerm::indicator_point(Vector b) {
  ProximableTerm t;
  t.form_ = Form::indicator_point;
  t.dim_ = b.size();
  t.anchor_ = std::move(b);
  return t;
}

ProximableTerm ProximableTerm::indicator_box(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("indicator_box: lo/hi length mismatch");
  ProximableTerm t;
  t.form_ = Form::indicator_box;
  t.dim_ = lo.size();
  t.lo_ = std::move(lo);
  t.hi_ = std::move(hi);
  return t;
}

ProximableTerm ProximableTerm::indicator_simplex(std::size_t dim) {
  ProximableTerm t;
  t.form_ = Form::indicator_simplex;
  t.dim_ = dim;
  return t;
}

ProximableTerm ProximableTerm::indicator_l2ball(double radius, std::size_t dim) {
  if (radius < 0.0) throw std::invalid_argument("indicator_l2ball: negative radius");
  ProximableTerm t;
  t.form_ = Form::indicator_l2ball;
  t.dim_ = dim;
  t.radius_ = radius;
  return t;
}

ProximableTerm ProximableTerm::indicator_nonneg(std::size_t dim) {
  ProximableTerm t;
  t.form_ = Form::indicator_nonneg;
  t.dim_ = dim;
  return t;
}

ProximableTerm ProximableTerm::support_of_shifted_set(Vector b, SetDescriptor set) {
  ProximableTerm t;
  t.form_ = Form::support_of_shifted_set;
  t.dim_ = b.size();
  t.anchor_ = std::move(b);
  t.set_ = std::move(set);
  return t;
}

ProximableTerm ProximableTerm::zero(std::size_t dim) {
  ProximableTerm t;
  t.form_ = Form::zero;
  t.dim_ = dim;
  return t;
}

const char* ProximableTerm::form_name() const {
  switch (form_) {
    case Form::weighted_l1: return "weighted_l1";
    case Form::linear_plus_nonneg: return "linear_plus_nonneg";
    case Form::indicator_point: return "indicator_point";
    case Form::indicator_box: return "indicator_box";
    case Form::indicator_simplex: return "indicator_simplex";
    case Form::indicator_l2ball: return "indicator_l2ball";
    case Form::indicator_nonneg: return "indicator_nonneg";
    case Form::support_of_shifted_set: return "support_of_shifted_set";
    case Form::zero: return "zero";
  }
  return "?";
}

double ProximableTerm::evaluate(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("evaluate: dimension mismatch");
  switch (form_) {
    case Form::weighted_l1:
      return lambda_ * nrm1(x);
    case Form::linear_plus_nonneg:
      for (double v : x)
        if (v < 0.0) return infinity();
      return dot(anchor_, x);
    case Form::indicator_point:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] != anchor_[i]) return infinity();
      return 0.0;
    case Form::indicator_box:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < lo_[i] || x[i] > hi_[i]) return infinity();
      return 0.0;
    case Form::indicator_simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < -1e-12) return infinity();
        s += v;
      }
      return std::fabs(s - 1.0) <= 1e-9 ? 0.0 : infinity();
    }
    case Form::indicator_l2ball:
      return nrm2(x) <= radius_ * (1.0 + 1e-12) ? 0.0 : infinity();
    case Form::indicator_nonneg:
      for (double v : x)
        if (v < 0.0) return infinity();
      return 0.0;
    case Form::support_of_shifted_set:
      return dot(anchor_, x) + set_.support(x);
    case Form::zero:
      return 0.0;
  }
  throw std::logic_error("evaluate: unknown form");
}

namespace {

Vector soft_threshold(const Vector& w, double t) {
  Vector r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > t)
      r[i] = w[i] - t;
    else if (w[i] < -t)
      r[i] = w[i] + t;
    else
      r[i] = 0.0;
  }
  return r;
}

}  // namespace

Vector generalized_prox(const ProximableTerm& t, const Vector& u, const Vector& y,
                        double theta, const BregmanDistance& d) {
  if (u.size() != t.dimension() || y.size() != t.dimension())
    throw std::invalid_argument("generalized_prox: dimension mismatch");
  if (theta <= 0.0) throw std::invalid_argument("generalized_prox: theta must be positive");

  using Form = ProximableTerm::Form;
  if (d.kind == BregmanKind::entropy) {
    // Multiplicative closed forms; only forms whose domain is compatible
    // with the positive orthant / simplex.
    switch (t.form()) {
      case Form::zero: {
        Vector r(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] <= 0.0)
            throw std::domain_error("generalized_prox: entropy distance requires u > 0");
          r[i] = u[i] * std::exp(-theta * y[i]);
        }
        return r;
      }
      case Form::indicator_simplex: {
        Vector r(u.size());
        double z = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] <= 0.0)
            throw std::domain_error("generalized_prox: entropy distance requires u > 0");
          r[i] = u[i] * std::exp(-theta * y[i]);
          z += r[i];
        }
        for (double& v : r) v /= z;
        return r;
      }
      default:
        throw CapabilityError(std::string("generalized_prox: unsupported pair (") +
                              t.form_name() + ", entropy)");
    }
  }

  // Euclidean distance: prox_{theta t}(u - theta y).
  Vector w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - theta * y[i];

  switch (t.form()) {
    case Form::weighted_l1:
      return soft_threshold(w, theta * t.lambda());
    case Form::linear_plus_nonneg: {
      Vector r(w.size());
      const Vector& c = t.anchor_;
      for (std::size_t i = 0; i < w.size(); ++i) r[i] = std::max(0.0, w[i] - theta * c[i]);
      return r;
    }
    case Form::indicator_point:
      return t.anchor_;
    case Form::indicator_box: {
      Vector r(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) r[i] = std::min(t.hi_[i], std::max(t.lo_[i], w[i]));
      return r;
    }
    case Form::indicator_simplex:
      return project_simplex(w);
    case Form::indicator_l2ball:
      return project_ball(w, t.radius_);
    case Form::indicator_nonneg: {
      Vector r(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) r[i] = std::max(0.0, w[i]);
      return r;
    }
    case Form::support_of_shifted_set: {
      // prox of theta*s_{b+K} via Moreau: shift by theta*b, subtract the
      // projection onto K. Computed as theta*(q - proj_K(q)) so cone cases
      // land exactly in dom(s_K).
      Vector q(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) q[i] = (w[i] - theta * t.anchor_[i]) / theta;
      Vector pq = t.set_.project(q);
      Vector r(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) r[i] = theta * (q[i] - pq[i]);
      return r;
    }
    case Form::zero:
      return w;
  }
  throw std::logic_error("generalized_prox: unknown form");
}

Vector prox_conjugate_via_moreau(const ProximableTerm& t, double gamma, const Vector& x) {
  if (gamma <= 0.0) throw std::invalid_argument("prox_conjugate_via_moreau: gamma must be positive");
  // prox_{t*/gamma}(x) = x - prox_{gamma t}(gamma x)/gamma.
  Vector gx = scaled(x, gamma);
  Vector p = generalized_prox(t, gx, Vector(x.size(), 0.0), gamma, BregmanDistance::euclidean());
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - p[i] / gamma;
  return r;
}

}  // namespace pdopt
