#include "pdopt/solvers.hpp"

#include <chrono>
#include <cmath>

namespace pdopt {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ns(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

bool wall_exceeded(Clock::time_point t0, double limit_s) {
  if (limit_s <= 0.0) return false;
  return std::chrono::duration<double>(Clock::now() - t0).count() >= limit_s;
}

// With a zero operator and no curvature the prox linear term vanishes
// identically; any positive step normalization is valid, so use 1.
double step_denominator(double norm_sq, double beta, double Lh) {
  double d = norm_sq + beta * Lh;
  return d > 0.0 ? d : 1.0;
}

void append_record(Trace& trace, const ProblemInstance& prob, long k, const Vector& x,
                   const Vector& Ax, double beta, Clock::time_point t0) {
  TraceRecord r;
  r.k = k;
  r.objective_residual = prob.objective_metric(x, Ax);
  r.feasibility = prob.feasibility_from_Ax(Ax);
  r.beta = beta;
  r.wall_ns = elapsed_ns(t0);
  trace.push_back(r);
}

void check_schedule_invariants(const SolverConfig& cfg, long s, double beta_s, long m_s) {
  double ws = std::pow(cfg.omega, static_cast<double>(s));
  double kappa0 = static_cast<double>(cfg.m0) + cfg.omega / (cfg.omega - 1.0);
  double m = static_cast<double>(m_s);
  if (m < static_cast<double>(cfg.m0) * ws || m > kappa0 * ws)
    throw std::logic_error("schedule invariant violated: m_s outside [m0 w^s, k0 w^s]");
  if (cfg.mode == DualMode::constrained) {
    double rho0 = cfg.beta0 * (1.0 - 1.0 / ((cfg.omega - 1.0) * static_cast<double>(cfg.m0)));
    if (beta_s < rho0 / ws || beta_s > cfg.beta0 / ws)
      throw std::logic_error("schedule invariant violated: beta_s outside [rho0/w^s, beta0/w^s]");
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (beta0 <= 0.0) throw std::invalid_argument("SolverConfig: beta0 must be positive");
  if (omega <= 1.0) throw std::invalid_argument("SolverConfig: omega must exceed 1");
  if (m0 < 1) throw std::invalid_argument("SolverConfig: m0 must be a positive integer");
  if (iter_budget < 0) throw std::invalid_argument("SolverConfig: negative budget");
  if (mode == DualMode::constrained &&
      static_cast<double>(m0) <= 1.0 / (omega - 1.0))
    throw std::invalid_argument("SolverConfig: constrained mode requires m0 > 1/(omega-1)");
}

double solve_tau_cubic(double tau_k, double L_b) {
  if (!(tau_k > 0.0 && tau_k <= 1.0)) throw std::invalid_argument("solve_tau_cubic: tau_k not in (0,1]");
  if (L_b <= 0.0) throw std::invalid_argument("solve_tau_cubic: L_b must be positive");
  auto cubic = [&](double t) {
    return t * t * t / L_b + t * t + tau_k * tau_k * t - tau_k * tau_k;
  };
  // cubic(0) = -tau_k^2 < 0, cubic(tau_k) = tau_k^3 (1/L_b + 1) > 0, and the
  // cubic is strictly increasing on (0, inf).
  double lo = 0.0, hi = tau_k;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    double v = cubic(mid);
    if (std::fabs(v) <= 1e-13) break;
    if (v < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-18) break;
  }
  return mid;
}

std::pair<double, long> schedule_unconstrained(double beta_s, long m_s, double omega) {
  if (omega <= 1.0) throw std::invalid_argument("schedule: omega must exceed 1");
  long m_next = static_cast<long>(std::floor(omega * static_cast<double>(m_s + 1) + 1.0)) - 1;
  return {beta_s / omega, m_next};
}

std::pair<double, long> schedule_constrained(double beta_s, long m_s, double omega) {
  if (omega <= 1.0) throw std::invalid_argument("schedule: omega must exceed 1");
  long m_next = static_cast<long>(std::floor(omega * static_cast<double>(m_s + 1) + 1.0)) - 1;
  double mn = static_cast<double>(m_next);
  double beta_next = beta_s * (mn + 1.0) / (omega * std::sqrt(mn * (mn + 3.0)));
  return {beta_next, m_next};
}

// ---------------------------------------------------------------------------
// ASGARD (single loop)
// ---------------------------------------------------------------------------

namespace {

SolverResult run_asgard_impl(const ProblemInstance& prob, const SolverConfig& cfg,
                             long restart_every) {
  cfg.validate();
  if (cfg.mode != prob.mode)
    throw std::invalid_argument("run_asgard: config mode does not match problem mode");
  const double L_bY = 1.0;
  const double norm_sq = prob.A.norm() * prob.A.norm();
  const double Lh = prob.h ? prob.h->lipschitz : 0.0;
  const std::size_t p = prob.primal_dim();

  Vector xbar = zeros(p), xhat = zeros(p);
  Vector ycenter = zeros(prob.dual_dim());
  double tau = 1.0;
  double beta = cfg.beta0;

  SolverResult out;
  const auto t0 = Clock::now();
  BregmanDistance bY = BregmanDistance::euclidean();

  for (long k = 0; k < cfg.iter_budget; ++k) {
    if (wall_exceeded(t0, cfg.wall_limit_s)) break;
    SmoothedDual sd = prob.smoothed(beta, ycenter);
    Vector xtilde = convex_combo(xbar, xhat, tau);
    Vector Axt = prob.A.apply(xtilde);
    Vector ytilde = sd.grad(Axt);
    out.max_center_bregman = std::max(out.max_center_bregman, bY.value(ytilde, ycenter));
    Vector lin = prob.A.adjoint_apply(ytilde);
    if (prob.h) {
      Vector hg = prob.h->grad(xtilde);
      for (std::size_t i = 0; i < p; ++i) lin[i] += hg[i];
    }
    double theta = beta / step_denominator(norm_sq, beta, Lh);
    Vector xbar_next = generalized_prox(prob.f, xtilde, lin, theta, bY);
    for (std::size_t i = 0; i < p; ++i) xhat[i] += (xbar_next[i] - xtilde[i]) / tau;
    xbar = std::move(xbar_next);

    Vector Axb = prob.A.apply(xbar);
    append_record(out.trace, prob, k + 1, xbar, Axb, beta, t0);

    if (restart_every > 0 && (k + 1) % restart_every == 0) {
      // Full state restart. Re-anchoring the smoothing center at the current
      // iterate is what keeps the fixed-beta0 scheme converging; with a
      // frozen center it stalls at the beta0-smoothed optimum.
      ycenter = sd.grad(Axb);
      xhat = xbar;
      tau = 1.0;
      beta = cfg.beta0;
    } else {
      tau = solve_tau_cubic(tau, L_bY);
      beta = beta / (1.0 + tau / L_bY);
    }
  }
  out.x = std::move(xbar);
  out.dual_center = std::move(ycenter);
  return out;
}

}  // namespace

SolverResult run_asgard(const ProblemInstance& prob, const SolverConfig& cfg) {
  return run_asgard_impl(prob, cfg, 0);
}

SolverResult run_asgard_restart_heuristic(const ProblemInstance& prob,
                                          const SolverConfig& cfg, long restart_every) {
  if (restart_every < 1)
    throw std::invalid_argument("run_asgard_restart_heuristic: restart_every must be >= 1");
  return run_asgard_impl(prob, cfg, restart_every);
}

// ---------------------------------------------------------------------------
// Self-adaptive double loop
// ---------------------------------------------------------------------------

namespace {

SolverResult run_dl_impl(const ProblemInstance& prob, const SolverConfig& cfg,
                         const RunHooks& hooks) {
  cfg.validate();
  if (cfg.mode != prob.mode)
    throw std::invalid_argument("run_asgard_dl: config mode does not match problem mode");
  const double norm_sq = prob.A.norm() * prob.A.norm();
  const double Lh = prob.h ? prob.h->lipschitz : 0.0;
  const std::size_t p = prob.primal_dim();
  const BregmanDistance bY = BregmanDistance::euclidean();

  SolverState st;
  st.xbar = zeros(p);
  st.xhat = st.xbar;
  st.ycenter = zeros(prob.dual_dim());
  st.beta_s = cfg.beta0;
  st.m_s = cfg.m0;

  SolverResult out;
  const auto t0 = Clock::now();
  bool stop = false;

  for (long s = 0; s < cfg.max_outer && st.k < cfg.iter_budget && !stop; ++s) {
    st.s = s;
    st.K_s = st.k;
    SmoothedDual sd = prob.smoothed(st.beta_s, st.ycenter);

    long j = 0;
    for (; j < st.m_s && st.k < cfg.iter_budget; ++j) {
      if (wall_exceeded(t0, cfg.wall_limit_s)) {
        stop = true;
        break;
      }
      const double tau = 2.0 / static_cast<double>(j + 2);
      st.tau_k = tau;
      st.xtilde = convex_combo(st.xbar, st.xhat, tau);
      Vector Axt = prob.A.apply(st.xtilde);
      st.ytilde = sd.grad(Axt);
      out.max_center_bregman =
          std::max(out.max_center_bregman, bY.value(st.ytilde, st.ycenter));
      Vector lin = prob.A.adjoint_apply(st.ytilde);
      if (prob.h) {
        Vector hg = prob.h->grad(st.xtilde);
        for (std::size_t i = 0; i < p; ++i) lin[i] += hg[i];
      }
      const double denom = step_denominator(norm_sq, st.beta_s, Lh);

      switch (cfg.inner_variant) {
        case InnerVariant::apg_averaging: {
          double gamma = st.beta_s / (tau * denom);
          Vector xhat_next = generalized_prox(prob.f, st.xhat, lin, gamma, bY);
          Vector xbar_next(p);
          for (std::size_t i = 0; i < p; ++i)
            xbar_next[i] = st.xtilde[i] + tau * (xhat_next[i] - st.xhat[i]);
          st.xhat = std::move(xhat_next);
          st.xbar = std::move(xbar_next);
          break;
        }
        case InnerVariant::apg_proximal: {
          double gamma = st.beta_s / (tau * denom);
          Vector xhat_next = generalized_prox(prob.f, st.xhat, lin, gamma, bY);
          st.xbar = generalized_prox(prob.f, st.xtilde, lin, st.beta_s / denom, bY);
          st.xhat = std::move(xhat_next);
          break;
        }
        case InnerVariant::fista: {
          double gamma = st.beta_s / denom;
          Vector xbar_next = generalized_prox(prob.f, st.xtilde, lin, gamma, bY);
          Vector xhat_next(p);
          const double c = (1.0 - tau) / tau;
          for (std::size_t i = 0; i < p; ++i)
            xhat_next[i] = xbar_next[i] + c * (xbar_next[i] - st.xbar[i]);
          st.xbar = std::move(xbar_next);
          st.xhat = std::move(xhat_next);
          break;
        }
      }

      ++st.k;
      Vector Axb = prob.A.apply(st.xbar);
      append_record(out.trace, prob, st.k, st.xbar, Axb, st.beta_s, t0);
      if (hooks.on_iterate) hooks.on_iterate(st.k, st.xbar);
    }

    if (j < st.m_s) break;  // budget or wall limit hit mid-loop

    // Outer restart. The APG variants carry the accumulated point in xhat;
    // the FISTA variant's xhat is an extrapolation, so there the momentum is
    // reset onto the proximal iterate instead.
    if (cfg.inner_variant == InnerVariant::fista)
      st.xhat = st.xbar;
    else
      st.xbar = st.xhat;
    Vector Axb = prob.A.apply(st.xbar);
    Vector center_next = sd.grad(Axb);
    ++out.outer_rounds;
    if (hooks.on_boundary) {
      OuterBoundary b{s, st.k, st.beta_s, st.m_s, st.xbar, st.ycenter, center_next};
      hooks.on_boundary(b);
    }
    st.ycenter = std::move(center_next);
    st.tau_k = 1.0;

    if (cfg.mode == DualMode::bounded_dual) {
      st.m_s = schedule_unconstrained(st.beta_s, st.m_s, cfg.omega).second;
      st.beta_s = cfg.beta0 / std::pow(cfg.omega, static_cast<double>(s + 1));
    } else {
      auto [beta_next, m_next] = schedule_constrained(st.beta_s, st.m_s, cfg.omega);
      st.beta_s = beta_next;
      st.m_s = m_next;
    }
    check_schedule_invariants(cfg, s + 1, st.beta_s, st.m_s);
  }

  out.x = std::move(st.xbar);
  out.dual_center = std::move(st.ycenter);
  return out;
}

}  // namespace

SolverResult run_asgard_dl(const ProblemInstance& prob, const SolverConfig& cfg,
                           const RunHooks& hooks) {
  return run_dl_impl(prob, cfg, hooks);
}

SolverResult run_asgard_dl_three_term(const ProblemInstance& prob, const SolverConfig& cfg,
                                      const RunHooks& hooks) {
  if (!prob.h)
    throw std::invalid_argument("run_asgard_dl_three_term: problem carries no smooth term");
  if (prob.h->lipschitz < 0.0)
    throw std::invalid_argument("run_asgard_dl_three_term: L_h must be nonnegative");
  return run_dl_impl(prob, cfg, hooks);
}

// ---------------------------------------------------------------------------
// Chambolle-Pock baseline
// ---------------------------------------------------------------------------

namespace {

Vector cp_dual_prox(const ProblemInstance& prob, const Vector& v, double sigma) {
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - sigma * prob.shift[i];
  if (prob.mode == DualMode::bounded_dual) return prob.dual_set.project(w);
  Vector pw = prob.dual_set.project(scaled(w, 1.0 / sigma));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= sigma * pw[i];
  return w;
}

}  // namespace

ChambollePockResult run_chambolle_pock(const ProblemInstance& prob,
                                       const ChambollePockConfig& cfg) {
  if (cfg.sigma <= 0.0 || cfg.tau_step <= 0.0)
    throw std::invalid_argument("run_chambolle_pock: steps must be positive");
  double nrm = prob.A.norm();
  if (cfg.sigma * cfg.tau_step * nrm * nrm > 1.0 + 1e-12)
    throw std::invalid_argument("run_chambolle_pock: sigma*tau*|A|^2 must be <= 1");

  const std::size_t p = prob.primal_dim();
  const std::size_t n = prob.dual_dim();
  Vector x = cfg.x0.empty() ? zeros(p) : cfg.x0;
  Vector y = cfg.y0.empty() ? zeros(n) : cfg.y0;
  if (x.size() != p || y.size() != n)
    throw std::invalid_argument("run_chambolle_pock: bad start dimensions");
  Vector xbar = x, xavg = zeros(p);
  const BregmanDistance eu = BregmanDistance::euclidean();

  ChambollePockResult out;
  const auto t0 = Clock::now();

  for (long k = 0; k < cfg.iter_budget; ++k) {
    if (wall_exceeded(t0, cfg.wall_limit_s)) break;
    Vector v = prob.A.apply(xbar);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] + cfg.sigma * v[i];
    y = cp_dual_prox(prob, v, cfg.sigma);

    Vector lin = prob.A.adjoint_apply(y);
    if (prob.h) {
      Vector hg = prob.h->grad(x);
      for (std::size_t i = 0; i < p; ++i) lin[i] += hg[i];
    }
    Vector x_next = generalized_prox(prob.f, x, lin, cfg.tau_step, eu);
    for (std::size_t i = 0; i < p; ++i) xbar[i] = 2.0 * x_next[i] - x[i];
    x = std::move(x_next);

    for (std::size_t i = 0; i < p; ++i) xavg[i] += (x[i] - xavg[i]) / static_cast<double>(k + 1);

    Vector Ax = prob.A.apply(x);
    append_record(out.trace, prob, k + 1, x, Ax, 0.0, t0);
    Vector Aavg = prob.A.apply(xavg);
    append_record(out.ergodic_trace, prob, k + 1, xavg, Aavg, 0.0, t0);
  }

  out.x = std::move(x);
  out.x_avg = std::move(xavg);
  out.y = std::move(y);
  return out;
}

// ---------------------------------------------------------------------------
// Outer-boundary bounds and the optimality-condition estimates
// ---------------------------------------------------------------------------

double bounded_dual_outer_bound(double R0_sq, double D_Y, double beta0, double omega, double m0,
                      double K) {
  double kappa0 = m0 + omega / (omega - 1.0);
  double lead = omega * kappa0 / (beta0 * ((omega - 1.0) * K + kappa0));
  return lead * (R0_sq + beta0 * beta0 * omega * D_Y / ((omega - 1.0) * m0));
}

ConstrainedOuterBounds constrained_outer_bounds(double R0, double y_star_norm, double beta0, double omega,
                               double m0, double L_bY, double K) {
  if (m0 <= 1.0 / (omega - 1.0))
    throw std::invalid_argument("constrained_outer_bounds: requires m0 > 1/(omega-1)");
  double kappa0 = m0 + omega / (omega - 1.0);
  double rho0 = beta0 * (1.0 - 1.0 / ((omega - 1.0) * m0));
  double denom = (omega - 1.0) * K + kappa0;
  ConstrainedOuterBounds b;
  b.lower_gap = 2.0 * std::sqrt(2.0) * omega * beta0 * L_bY * kappa0 * y_star_norm * R0 /
                (rho0 * denom);
  b.upper_gap = omega * kappa0 * R0 * R0 / (rho0 * denom) +
                omega * beta0 * L_bY * kappa0 / (2.0 * denom) *
                    (y_star_norm * y_star_norm + 2.0 * R0 * R0 / (rho0 * rho0));
  b.feas_bound = omega * beta0 * L_bY * kappa0 / denom *
                 (2.0 * y_star_norm +
                  (2.0 * std::sqrt(2.0) + std::sqrt(2.0 / L_bY)) * R0 / rho0);
  return b;
}

double bounded_dual_R0_sq(const ProblemInstance& prob, double beta0, double m0,
                      const Vector& x_star, const Vector& y_star, const Vector& x0,
                      const Vector& y0) {
  double nrm = prob.A.norm();
  BregmanDistance eu = BregmanDistance::euclidean();
  double dx = eu.value(x_star, x0);
  double by = eu.value(y_star, y0);
  return 4.0 * nrm * nrm / ((m0 + 1.0) * (m0 + 1.0)) * dx + beta0 * beta0 * by;
}

double constrained_R0(const ProblemInstance& prob, double beta0, double m0,
                   const Vector& x_star, const Vector& y_star, const Vector& x0,
                   const Vector& y0) {
  double nrm = prob.A.norm();
  BregmanDistance eu = BregmanDistance::euclidean();
  double dx = eu.value(x_star, x0);
  double by = eu.value(y_star, y0);
  double mp1 = (m0 + 1.0) * (m0 + 1.0);
  return std::sqrt(4.0 * nrm * nrm / mp1 * dx + beta0 * beta0 * m0 * (m0 + 3.0) / mp1 * by);
}

OptimalityEstimates optimality_estimates(const Vector& x_bar, const Vector& y_center, double beta,
                          const ProblemInstance& prob, const Vector& y_star,
                          double f_star) {
  if (prob.mode != DualMode::constrained)
    throw std::invalid_argument("optimality_estimates: constrained problems only");
  const double L_bY = 1.0;
  const double beta_b = beta * L_bY;

  Vector Ax = prob.A.apply(x_bar);
  double fx = prob.objective_value(x_bar, Ax);
  SmoothedDual sd = prob.smoothed(beta, y_center);
  double S = fx + constrained_smoothed_value(sd, Ax) - f_star;

  Vector r = sub(Ax, prob.shift);
  Vector w_plus = r;
  axpy(beta_b, y_center, w_plus);
  double d1 = prob.dual_set.dist_to_set(w_plus);

  double gap = fx - f_star;
  double yn = nrm2(y_star);

  OptimalityEstimates rep;
  rep.slack_lower = gap - (beta_b * dot(y_center, y_star) - yn * d1);
  rep.slack_upper =
      (S - d1 * d1 / (2.0 * beta_b) + 0.5 * beta_b * nrm2_sq(y_center)) - gap;
  double inner = nrm2_sq(sub(y_center, y_star)) + 2.0 * S / beta_b;
  rep.slack_dist = beta_b * (yn + std::sqrt(std::max(0.0, inner))) - d1;

  double t_plain = prob.dual_set.dist_to_set(r);
  Vector w_minus = r;
  axpy(-beta, y_center, w_minus);
  double t_shift = prob.dual_set.dist_to_set(w_minus);
  double band = beta * (dist2(y_center, y_star) + yn);
  rep.slack_band_lo = t_shift - (t_plain - band);
  rep.slack_band_hi = (t_plain + band) - t_shift;
  return rep;
}

}  // namespace pdopt
