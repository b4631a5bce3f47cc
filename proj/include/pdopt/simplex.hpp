#ifndef PDOPT_SIMPLEX_HPP
#define PDOPT_SIMPLEX_HPP

#include "pdopt/linops.hpp"
#include "pdopt/vec.hpp"

namespace pdopt {

struct LpSolution {
  Vector z;           // primal solution of the standard-form LP
  double objective;   // c^T z
  Vector multipliers; // equality-constraint duals pi (c_j >= pi^T M_j)
};

// Two-phase dense tableau simplex with Bland's rule for
//   min c^T z  s.t.  M z = q, z >= 0   (M row-major, m x n).
// Throws std::runtime_error on infeasible or unbounded input.
LpSolution simplex_solve(std::size_t m, std::size_t n, const Vector& M, const Vector& q,
                         const Vector& c);

struct BasisPursuitSolution {
  Vector x_star;
  double f_star;
  Vector y_star;  // dual with the sign convention A^T y* in -d|x*|_1
};

// Exact reference for min |x|_1 s.t. Ax = b via the split-variable LP.
BasisPursuitSolution solve_basis_pursuit_lp(const LinearMap& A, const Vector& b);

}  // namespace pdopt

#endif  // PDOPT_SIMPLEX_HPP
