#ifndef PDOPT_PROBLEMS_HPP
#define PDOPT_PROBLEMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "pdopt/linops.hpp"
#include "pdopt/proxcore.hpp"
#include "pdopt/smoothing.hpp"

namespace pdopt {

// Differentiable objective term with Lipschitz gradient (L_h >= 0; a linear
// term has L_h = 0).
struct SmoothTerm {
  double lipschitz = 0.0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> grad;
};

struct Reference {
  Vector x_star;
  double obj_star = 0.0;  // P* in bounded-dual mode, f* in constrained mode
  std::optional<Vector> y_star;
};

// min_x f(x) + g(Ax) + h(x), with g(u) = g0(u - shift):
//   bounded_dual:  g0 is the support function of the bounded dual domain
//                  `dual_set` (so g is Lipschitz),
//   constrained:   g0 is the indicator of `dual_set` (the set K).
struct ProblemInstance {
  std::string name;
  ProximableTerm f;
  DualMode mode = DualMode::bounded_dual;
  SetDescriptor dual_set;
  Vector shift;
  LinearMap A;
  std::optional<SmoothTerm> h;
  std::optional<Reference> reference;
  double default_beta0_scale = 1.0;  // beta0 = scale * |A|

  std::size_t primal_dim() const { return A.cols(); }
  std::size_t dual_dim() const { return A.rows(); }

  SmoothedDual smoothed(double beta, Vector center) const;

  // f(x) + h(x), plus g(Ax) in bounded-dual mode.
  double objective_value(const Vector& x, const Vector& Ax) const;
  double objective_value(const Vector& x) const;
  // dist_K(Ax - b) in constrained mode, 0 otherwise.
  double feasibility_from_Ax(const Vector& Ax) const;
  double feasibility(const Vector& x) const;
  // Residual metric for traces: P - P* (bounded) or |f - f*| (constrained)
  // when a reference is attached, the raw objective value otherwise.
  double objective_metric(const Vector& x, const Vector& Ax) const;
};

struct Dataset {
  std::size_t n_features = 0;
  // one row per sample; (index, value) pairs with strictly increasing indices
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<int> labels;  // each -1 or +1

  std::size_t n_samples() const { return rows.size(); }
};

// ---------------------------------------------------------------------------
// Builders (seeded generation is reproducible bitwise)
// ---------------------------------------------------------------------------

// min |Ax - b|_2 + lambda |x|_1, Gaussian A with unit column norms,
// b = A x_nat + sigma * noise.
ProblemInstance build_sqrt_lasso(std::size_t n, std::size_t p, double sigma_noise,
                                 double lambda, std::uint64_t seed);

// min 2 x_p  s.t.  sum_{k<p} x_k = 1, x_p - sum_{k<p} x_k = 0 (n-1 times),
// x_p >= 0. Every feasible point is optimal with value 2.
ProblemInstance build_degenerate_lp(std::size_t p, std::size_t n);

// min |x|_1 s.t. Ax = b, with b = A x_nat for a 5-sparse x_nat.
ProblemInstance build_basis_pursuit(std::size_t n, std::size_t p, std::uint64_t seed);
ProblemInstance build_basis_pursuit(LinearMap A, Vector b);

// min |Ax - b|_1 + lambda |x|_1 with Laplace noise; lambda defaults to 1/n
// when passed as <= 0.
ProblemInstance build_lad_lasso(std::size_t n, std::size_t p, std::size_t sparsity,
                                double sigma, std::uint64_t seed, double lambda = 0.0);

// min (1/n) sum max(0, 1 - b_i <a_i, x>) + lambda |x|_1.
ProblemInstance build_l1_svm(const Dataset& data, double lambda);

// min -<rho, x> s.t. x in simplex, (1/p)|Ax|^2 <= epsilon; rows of the
// returns matrix are per-period asset returns, rho is their mean.
ProblemInstance build_portfolio(const std::vector<Vector>& returns_rows, double epsilon);

// Random dense dataset with labels from a seeded hyperplane.
Dataset make_synthetic_dataset(std::size_t n, std::size_t p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reference oracles
// ---------------------------------------------------------------------------

enum class OracleKind { analytic, lp_exact, long_run };

// Computes a reference solution and stores it in the instance.
//   analytic: closed-form instances (degenerate LP, identity basis pursuit).
//   lp_exact: simplex on the split-variable LP reformulation; also a dual y*.
//   long_run: high-accuracy double-loop run (bounded-dual instances).
void reference_solution(ProblemInstance& prob, OracleKind kind, long budget = 1000000);

}  // namespace pdopt

#endif  // PDOPT_PROBLEMS_HPP
