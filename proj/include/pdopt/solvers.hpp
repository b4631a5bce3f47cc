#ifndef PDOPT_SOLVERS_HPP
#define PDOPT_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>

#include "pdopt/problems.hpp"

namespace pdopt {

enum class InnerVariant { apg_averaging, apg_proximal, fista };

struct SolverConfig {
  double beta0 = 1.0;
  double omega = 1.2;
  long m0 = 6;
  InnerVariant inner_variant = InnerVariant::apg_averaging;
  DualMode mode = DualMode::bounded_dual;
  long max_outer = std::numeric_limits<long>::max();
  long iter_budget = 1000;
  double wall_limit_s = 0.0;  // 0 disables the wall-clock budget
  std::uint64_t seed = 0;

  void validate() const;
};

struct TraceRecord {
  long k = 0;
  double objective_residual = 0.0;
  double feasibility = 0.0;
  double beta = 0.0;
  long long wall_ns = 0;
};

using Trace = std::vector<TraceRecord>;

// Live iterates and counters of a double-loop run.
struct SolverState {
  long s = 0;      // outer index
  long k = 0;      // global inner counter
  long K_s = 0;    // outer-start index
  long m_s = 0;    // current inner length
  double beta_s = 0.0;
  double tau_k = 1.0;
  Vector xbar, xhat, xtilde, ytilde, ycenter;
};

struct OuterBoundary {
  long s;       // outer round just completed
  long K_next;  // K_{s+1}
  double beta_s;
  long m_s;
  const Vector& x_boundary;   // iterate at K_{s+1} after the restart step
  const Vector& center_prev;  // ydot^s
  const Vector& center_next;  // ydot^{s+1}
};

struct RunHooks {
  std::function<void(const OuterBoundary&)> on_boundary;
  std::function<void(long k, const Vector& xbar)> on_iterate;
};

struct SolverResult {
  Trace trace;
  Vector x;
  Vector dual_center;
  long outer_rounds = 0;
  // Empirical max of b_Y(y_tilde, ydot^s) observed over the run; recorded
  // alongside the a-priori dual-diameter certificate.
  double max_center_bregman = 0.0;
};

// Unique root in (0, tau_k) of tau^3/L_b + tau^2 + tau_k^2 tau - tau_k^2 = 0,
// bisection, residual <= 1e-12.
double solve_tau_cubic(double tau_k, double L_b);

// beta/omega and floor(omega(m+1)+1)-1.
std::pair<double, long> schedule_unconstrained(double beta_s, long m_s, double omega);
// same m update; beta' = beta (m'+1) / (omega sqrt(m'(m'+3))), requires
// m0 > 1/(omega-1) upstream.
std::pair<double, long> schedule_constrained(double beta_s, long m_s, double omega);

SolverResult run_asgard(const ProblemInstance& prob, const SolverConfig& cfg);
// Plain ASGARD with hat/tau/beta reset every restart_every iterations; the
// dual center never moves and no schedule is applied.
SolverResult run_asgard_restart_heuristic(const ProblemInstance& prob,
                                          const SolverConfig& cfg, long restart_every);

SolverResult run_asgard_dl(const ProblemInstance& prob, const SolverConfig& cfg,
                           const RunHooks& hooks = {});
// Same loop with the smooth-term step size; requires prob.h (L_h = 0 is
// accepted for linear terms).
SolverResult run_asgard_dl_three_term(const ProblemInstance& prob, const SolverConfig& cfg,
                                      const RunHooks& hooks = {});

struct ChambollePockConfig {
  double sigma = 1.0;
  double tau_step = 1.0;
  long iter_budget = 1000;
  double wall_limit_s = 0.0;
  Vector x0;  // empty means the origin
  Vector y0;
};

struct ChambollePockResult {
  Trace trace;          // last-iterate metrics
  Trace ergodic_trace;  // uniform running-average metrics
  Vector x;
  Vector x_avg;
  Vector y;
};

ChambollePockResult run_chambolle_pock(const ProblemInstance& prob,
                                       const ChambollePockConfig& cfg);

// Right-hand side of the bounded-dual outer-boundary bound:
//   omega k0 / (beta0 [(omega-1)K + k0]) * [R0^2 + beta0^2 omega D_Y /
//   ((omega-1) m0)],  k0 = m0 + omega/(omega-1).
double bounded_dual_outer_bound(double R0_sq, double D_Y, double beta0, double omega, double m0,
                      double K);

struct ConstrainedOuterBounds {
  double lower_gap;   // magnitude of the bound term beyond -|y*| dist_K
  double upper_gap;   // bound on f - f*
  double feas_bound;  // bound on dist_K(A xbar - b)
};

ConstrainedOuterBounds constrained_outer_bounds(double R0, double y_star_norm, double beta0, double omega,
                               double m0, double L_bY, double K);

// R0^2 quantities from a known (x*, y*) pair and zero starts.
double bounded_dual_R0_sq(const ProblemInstance& prob, double beta0, double m0,
                      const Vector& x_star, const Vector& y_star,
                      const Vector& x0, const Vector& y0);
double constrained_R0(const ProblemInstance& prob, double beta0, double m0,
                   const Vector& x_star, const Vector& y_star, const Vector& x0,
                   const Vector& y0);

struct OptimalityEstimates {
  double slack_lower;    // f - f*  >=  beta_b <ydot, y*> - |y*| dist(...)
  double slack_upper;    // f - f*  <=  S_beta - dist(...)^2/(2 beta_b) + ...
  double slack_dist;     // dist(...) <= beta_b [ |y*| + sqrt(...) ]
  double slack_band_lo;  // dist(A xbar - b) - band <= dist(A xbar - b - beta ydot)
  double slack_band_hi;  // dist(A xbar - b - beta ydot) <= dist(A xbar - b) + band
};

OptimalityEstimates optimality_estimates(const Vector& x_bar, const Vector& y_center, double beta,
                          const ProblemInstance& prob, const Vector& y_star,
                          double f_star);

}  // namespace pdopt

#endif  // PDOPT_SOLVERS_HPP
