#ifndef PDOPT_PROXCORE_HPP
#define PDOPT_PROXCORE_HPP

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "pdopt/vec.hpp"

namespace pdopt {

inline double infinity() { return std::numeric_limits<double>::infinity(); }

// Thrown when a (form, distance) pair has no closed-form solve. The prox
// catalogue is closed-world: no generic inner numerical solver.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

enum class BregmanKind { euclidean, entropy };

struct BregmanDistance {
  BregmanKind kind = BregmanKind::euclidean;

  static BregmanDistance euclidean() { return {BregmanKind::euclidean}; }
  static BregmanDistance entropy() { return {BregmanKind::entropy}; }

  // Gradient Lipschitz constant of b(., y); absent for the entropy kind.
  std::optional<double> grad_lipschitz() const {
    if (kind == BregmanKind::euclidean) return 1.0;
    return std::nullopt;
  }

  double value(const Vector& x, const Vector& y) const;
};

double bregman_value(const BregmanDistance& d, const Vector& x, const Vector& y);

// Nonempty closed convex sets with closed-form Euclidean projections.
class SetDescriptor {
 public:
  enum class Kind { point, nonneg_orthant, box, l2ball, affine_zero, simplex };

  static SetDescriptor point(Vector b);
  static SetDescriptor nonneg_orthant();
  static SetDescriptor box(Vector lo, Vector hi);
  static SetDescriptor l2ball(double radius);
  static SetDescriptor affine_zero();
  static SetDescriptor simplex();

  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  const Vector& anchor() const { return anchor_; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  bool is_cone() const {
    return kind_ == Kind::nonneg_orthant || kind_ == Kind::affine_zero;
  }

  Vector project(const Vector& u) const;
  double dist_to_set(const Vector& u) const;
  // Support function s_K(y); +inf outside dom(s_K).
  double support(const Vector& y) const;
  // Projection onto the polar cone -K* (cone kinds only).
  Vector project_polar(const Vector& u) const;

 private:
  Kind kind_ = Kind::affine_zero;
  Vector anchor_, lo_, hi_;
  double radius_ = 0.0;
};

// Euclidean projection onto the unit-sum simplex, sort-and-threshold,
// O(p log p), ties broken by lower index first.
Vector project_simplex(const Vector& u);

class ProximableTerm {
 public:
  ProximableTerm() = default;  // the zero function on an empty space

  enum class Form {
    weighted_l1,
    linear_plus_nonneg,
    indicator_point,
    indicator_box,
    indicator_simplex,
    indicator_l2ball,
    indicator_nonneg,
    support_of_shifted_set,
    zero
  };

  static ProximableTerm weighted_l1(double lambda, std::size_t dim);
  static ProximableTerm linear_plus_nonneg(Vector c);
  static ProximableTerm indicator_point(Vector b);
  static ProximableTerm indicator_box(Vector lo, Vector hi);
  static ProximableTerm indicator_simplex(std::size_t dim);
  static ProximableTerm indicator_l2ball(double radius, std::size_t dim);
  static ProximableTerm indicator_nonneg(std::size_t dim);
  static ProximableTerm support_of_shifted_set(Vector b, SetDescriptor set);
  static ProximableTerm zero(std::size_t dim);

  Form form() const { return form_; }
  std::size_t dimension() const { return dim_; }
  double lambda() const { return lambda_; }
  const char* form_name() const;

  double evaluate(const Vector& x) const;

 private:
  friend Vector generalized_prox(const ProximableTerm&, const Vector&, const Vector&,
                                 double, const BregmanDistance&);

  Form form_ = Form::zero;
  std::size_t dim_ = 0;
  double lambda_ = 0.0;
  Vector anchor_, lo_, hi_;
  double radius_ = 0.0;
  SetDescriptor set_;
};

// argmin_v { t(v) + <y, v-u> + (1/theta) d(v,u) }, closed form per
// supported (form, distance) pair; rejects anything else.
Vector generalized_prox(const ProximableTerm& t, const Vector& u, const Vector& y,
                        double theta, const BregmanDistance& d);

// prox_{t*/gamma}(x) through Moreau's identity.
Vector prox_conjugate_via_moreau(const ProximableTerm& t, double gamma, const Vector& x);

}  // namespace pdopt

#endif  // PDOPT_PROXCORE_HPP
