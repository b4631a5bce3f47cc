#include "pdopt/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace pdopt {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Dense tableau over columns [structural | artificial | rhs]. The artificial
// block starts as the identity, so at any basis it holds B^{-1}.
struct Tableau {
  std::size_t m, n;            // constraints, structural variables
  std::vector<Vector> rows;    // m rows of length n + m + 1
  std::vector<std::size_t> basis;

  double& at(std::size_t i, std::size_t j) { return rows[i][j]; }
  double rhs(std::size_t i) const { return rows[i][n + m]; }

  void pivot(std::size_t pr, std::size_t pc) {
    Vector& prow = rows[pr];
    double pv = prow[pc];
    for (double& v : prow) v /= pv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pr) continue;
      double f = rows[i][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) rows[i][j] -= f * prow[j];
    }
    basis[pr] = pc;
  }

  // Bland's rule over the allowed column range [0, ncols); returns false at
  // optimality for the given costs.
  bool step(const Vector& cost, std::size_t ncols) {
    // reduced costs r_j = c_j - cB^T B^{-1} M_j; the tableau rows already
    // hold B^{-1} M, so r_j = c_j - sum_i cost[basis_i] * T[i][j].
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      double r = cost[j];
      for (std::size_t i = 0; i < m; ++i) {
        double cb = cost[basis[i]];
        if (cb != 0.0) r -= cb * rows[i][j];
      }
      if (r < -kCostTol) {
        enter = j;
        break;  // smallest eligible index
      }
    }
    if (enter == ncols) return false;

    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double a = rows[i][enter];
      if (a > kPivotTol) {
        double ratio = rhs(i) / a;
        if (leave == m || ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave == m) throw std::runtime_error("simplex_solve: LP is unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution simplex_solve(std::size_t m, std::size_t n, const Vector& M, const Vector& q,
                         const Vector& c) {
  if (M.size() != m * n || q.size() != m || c.size() != n)
    throw std::invalid_argument("simplex_solve: dimension mismatch");

  Tableau t;
  t.m = m;
  t.n = n;
  t.rows.assign(m, Vector(n + m + 1, 0.0));
  t.basis.resize(m);
  std::vector<double> row_sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    double s = q[i] < 0.0 ? -1.0 : 1.0;
    row_sign[i] = s;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = s * M[i * n + j];
    t.at(i, n + i) = 1.0;
    t.at(i, n + m) = s * q[i];
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the artificial total.
  Vector phase1_cost(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = 1.0;
  for (long guard = 0; t.step(phase1_cost, n + m); ++guard)
    if (guard > 200000) throw std::runtime_error("simplex_solve: phase 1 cycling guard hit");

  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] >= n) infeas += t.rhs(i);
  if (infeas > 1e-7) throw std::runtime_error("simplex_solve: LP is infeasible");

  // Drive remaining zero-level artificials out where a structural pivot
  // exists; rows without one are redundant and stay put at level zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(t.rows[i][j]) > kPivotTol) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over structural columns only (artificials priced +inf by
  // exclusion from the candidate range; any still-basic artificial sits at
  // level zero in a redundant row).
  Vector phase2_cost(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = c[j];
  for (long guard = 0; t.step(phase2_cost, n); ++guard)
    if (guard > 200000) throw std::runtime_error("simplex_solve: phase 2 cycling guard hit");

  LpSolution sol;
  sol.z.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < n) sol.z[t.basis[i]] = t.rhs(i);
  sol.objective = dot(sol.z, c);
  // pi^T = cB^T B^{-1}; the artificial block carries B^{-1}. Undo the row
  // sign flips applied during setup.
  sol.multipliers.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double pi = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      double cb = t.basis[r] < n ? c[t.basis[r]] : 0.0;
      if (cb != 0.0) pi += cb * t.rows[r][n + i];
    }
    sol.multipliers[i] = row_sign[i] * pi;
  }
  return sol;
}

BasisPursuitSolution solve_basis_pursuit_lp(const LinearMap& A, const Vector& b) {
  const std::size_t m = A.rows();
  const std::size_t p = A.cols();
  // min 1^T u + 1^T v  s.t.  A u - A v = b, u, v >= 0; x = u - v.
  Vector M(m * 2 * p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    Vector e(p, 0.0);
    e[j] = 1.0;
    Vector col = A.apply(e);
    for (std::size_t i = 0; i < m; ++i) {
      M[i * 2 * p + j] = col[i];
      M[i * 2 * p + p + j] = -col[i];
    }
  }
  Vector c(2 * p, 1.0);
  LpSolution lp = simplex_solve(m, 2 * p, M, b, c);

  BasisPursuitSolution out;
  out.x_star.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) out.x_star[j] = lp.z[j] - lp.z[p + j];
  out.f_star = lp.objective;
  // simplex multipliers satisfy A^T pi in d|x*|_1; the saddle-point dual of
  // the primal-dual formulation carries the opposite sign.
  out.y_star = scaled(lp.multipliers, -1.0);
  return out;
}

}  // namespace pdopt
