#include "pdopt/smoothing.hpp"

#include <cmath>

namespace pdopt {

namespace {

Vector shifted_arg(const SmoothedDual& sd, const Vector& u) {
  if (u.size() != sd.shift.size()) throw std::invalid_argument("smoothing: dimension mismatch");
  return sub(u, sd.shift);
}

}  // namespace

Vector SmoothedDual::grad(const Vector& u) const {
  if (mode == DualMode::constrained) return constrained_smoothed_grad(*this, u);
  Vector v = shifted_arg(*this, u);
  if (bregman.kind == BregmanKind::euclidean) {
    // prox form: project ydot + v/beta onto the dual domain
    Vector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = center[i] + v[i] / beta;
    return set.project(w);
  }
  if (bregman.kind == BregmanKind::entropy && set.kind() == SetDescriptor::Kind::simplex) {
    // multiplicative update on the simplex
    Vector r(v.size());
    double z = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (center[i] <= 0.0)
        throw std::domain_error("smoothed_grad: entropy center must be strictly positive");
      r[i] = center[i] * std::exp(v[i] / beta);
      z += r[i];
    }
    for (double& e : r) e /= z;
    return r;
  }
  throw CapabilityError("smoothed_grad: unsupported (dual domain, bregman) pair");
}

double SmoothedDual::value(const Vector& u) const {
  if (mode == DualMode::constrained) return constrained_smoothed_value(*this, u);
  Vector v = shifted_arg(*this, u);
  Vector ystar = grad(u);
  return dot(v, ystar) - beta * bregman.value(ystar, center);
}

Vector smoothed_grad(const SmoothedDual& sd, const Vector& u) { return sd.grad(u); }
double smoothed_value(const SmoothedDual& sd, const Vector& u) { return sd.value(u); }

double constrained_smoothed_value(const SmoothedDual& sd, const Vector& Ax) {
  if (sd.bregman.kind != BregmanKind::euclidean)
    throw CapabilityError("constrained_smoothed_value: euclidean bregman required");
  Vector v = shifted_arg(sd, Ax);
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + sd.beta * sd.center[i];
  double d = sd.set.dist_to_set(w);
  return d * d / (2.0 * sd.beta) - 0.5 * sd.beta * nrm2_sq(sd.center);
}

Vector constrained_smoothed_grad(const SmoothedDual& sd, const Vector& Ax) {
  if (sd.bregman.kind != BregmanKind::euclidean)
    throw CapabilityError("constrained_smoothed_grad: euclidean bregman required");
  Vector v = shifted_arg(sd, Ax);
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + sd.beta * sd.center[i];
  Vector pw = sd.set.project(w);
  Vector y(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) y[i] = sd.center[i] + (v[i] - pw[i]) / sd.beta;
  return y;
}

double unsmoothed_value(const SmoothedDual& sd, const Vector& u) {
  if (sd.mode == DualMode::constrained)
    throw CapabilityError("unsmoothed_value: constrained g is an indicator");
  return sd.set.support(shifted_arg(sd, u));
}

std::optional<double> dual_diameter_bound(const SmoothedDual& sd) {
  if (sd.mode == DualMode::constrained) return std::nullopt;
  if (sd.bregman.kind != BregmanKind::euclidean) return std::nullopt;
  switch (sd.set.kind()) {
    case SetDescriptor::Kind::box: {
      double s = 0.0;
      for (std::size_t i = 0; i < sd.set.lo().size(); ++i) {
        double a = sd.center[i] - sd.set.lo()[i];
        double b = sd.set.hi()[i] - sd.center[i];
        double m = std::max(std::fabs(a), std::fabs(b));
        s += 0.5 * m * m;
      }
      return s;
    }
    case SetDescriptor::Kind::l2ball: {
      double m = sd.set.radius() + nrm2(sd.center);
      return 0.5 * m * m;
    }
    case SetDescriptor::Kind::simplex: {
      double worst = 0.0;
      for (std::size_t i = 0; i < sd.center.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < sd.center.size(); ++j) {
          double d = (i == j ? 1.0 : 0.0) - sd.center[j];
          s += 0.5 * d * d;
        }
        worst = std::max(worst, s);
      }
      return worst;
    }
    case SetDescriptor::Kind::point:
      return 0.0;
    default:
      return std::nullopt;
  }
}

double worst_case_dual_diameter(const SetDescriptor& domain, std::size_t dim) {
  switch (domain.kind()) {
    case SetDescriptor::Kind::box: {
      double s = 0.0;
      for (std::size_t i = 0; i < domain.lo().size(); ++i) {
        double w = domain.hi()[i] - domain.lo()[i];
        s += 0.5 * w * w;
      }
      return s;
    }
    case SetDescriptor::Kind::l2ball: {
      double w = 2.0 * domain.radius();
      return 0.5 * w * w;
    }
    case SetDescriptor::Kind::simplex:
      (void)dim;
      return 1.0;  // squared corner-to-corner diameter is 2
    case SetDescriptor::Kind::point:
      return 0.0;
    default:
      throw CapabilityError("worst_case_dual_diameter: unbounded dual domain");
  }
}

}  // namespace pdopt
