#ifndef PDOPT_SMOOTHING_HPP
#define PDOPT_SMOOTHING_HPP

#include <optional>

#include "pdopt/proxcore.hpp"

namespace pdopt {

enum class DualMode { bounded_dual, constrained };

// The smoothed dual term g_beta(.; ydot) for g(u) = g0(u - shift), where g0
// is the support function of a bounded dual domain Y (bounded_dual) or the
// indicator of a constraint set K (constrained).
struct SmoothedDual {
  double beta = 1.0;
  Vector center;  // ydot
  BregmanDistance bregman = BregmanDistance::euclidean();
  DualMode mode = DualMode::bounded_dual;
  SetDescriptor set;  // dual domain Y, or constraint set K
  Vector shift;       // b

  // Maximizer y*_beta(u; ydot); also the gradient of g_beta at u.
  Vector grad(const Vector& u) const;
  double value(const Vector& u) const;
};

Vector smoothed_grad(const SmoothedDual& sd, const Vector& u);
double smoothed_value(const SmoothedDual& sd, const Vector& u);

// Constrained closed forms (Euclidean Bregman only):
//   g_beta(Ax; ydot) = (1/2beta) dist_K(Ax - b + beta*ydot)^2 - (beta/2)|ydot|^2
//   y* = ydot + (1/beta)(Ax - b - proj_K(Ax - b + beta*ydot))
double constrained_smoothed_value(const SmoothedDual& sd, const Vector& Ax);
Vector constrained_smoothed_grad(const SmoothedDual& sd, const Vector& Ax);

// Nonsmooth value g(u) (support of the dual domain / indicator distance is
// not included here; constrained mode has no finite g in general).
double unsmoothed_value(const SmoothedDual& sd, const Vector& u);

// sup of b_Y(y, center) over the dual domain, from this instance's center;
// absent when the dual domain is unbounded (constrained mode).
std::optional<double> dual_diameter_bound(const SmoothedDual& sd);

// sup of b_Y(y, c) over all centers c in the domain as well; dominates every
// restart center a double-loop run can produce.
double worst_case_dual_diameter(const SetDescriptor& domain, std::size_t dim);

}  // namespace pdopt

#endif  // PDOPT_SMOOTHING_HPP
