#include "pdopt/problems.hpp"

#include <cmath>

#include "pdopt/rng.hpp"
#include "pdopt/simplex.hpp"
#include "pdopt/solvers.hpp"

namespace pdopt {

SmoothedDual ProblemInstance::smoothed(double beta, Vector center) const {
  SmoothedDual sd;
  sd.beta = beta;
  sd.center = std::move(center);
  sd.bregman = BregmanDistance::euclidean();
  sd.mode = mode;
  sd.set = dual_set;
  sd.shift = shift;
  return sd;
}

double ProblemInstance::objective_value(const Vector& x, const Vector& Ax) const {
  double v = f.evaluate(x);
  if (h) v += h->value(x);
  if (mode == DualMode::bounded_dual) v += dual_set.support(sub(Ax, shift));
  return v;
}

double ProblemInstance::objective_value(const Vector& x) const {
  return objective_value(x, A.apply(x));
}

double ProblemInstance::feasibility_from_Ax(const Vector& Ax) const {
  if (mode != DualMode::constrained) return 0.0;
  return dual_set.dist_to_set(sub(Ax, shift));
}

double ProblemInstance::feasibility(const Vector& x) const {
  return feasibility_from_Ax(A.apply(x));
}

double ProblemInstance::objective_metric(const Vector& x, const Vector& Ax) const {
  double v = objective_value(x, Ax);
  if (!reference) return v;
  double d = v - reference->obj_star;
  return mode == DualMode::bounded_dual ? d : std::fabs(d);
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

// Dense Gaussian matrix in row-major order, one substream per column.
Vector gaussian_matrix(std::size_t n, std::size_t p, Rng& stream) {
  Vector a(n * p);
  for (std::size_t j = 0; j < p; ++j) {
    Rng col = stream.split(j);
    for (std::size_t i = 0; i < n; ++i) a[i * p + j] = col.gaussian();
  }
  return a;
}

Vector sparse_ground_truth(std::size_t p, std::size_t s, Rng& support_stream,
                           Rng& value_stream) {
  Vector x(p, 0.0);
  std::vector<std::size_t> idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  for (std::size_t i = 0; i < s && i < p; ++i) {
    std::size_t j = i + static_cast<std::size_t>(support_stream.next_u64() % (p - i));
    std::swap(idx[i], idx[j]);
    x[idx[i]] = value_stream.gaussian();
  }
  return x;
}

}  // namespace

ProblemInstance build_sqrt_lasso(std::size_t n, std::size_t p, double sigma_noise,
                                 double lambda, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("build_sqrt_lasso: empty dimensions");
  if (lambda <= 0.0) throw std::invalid_argument("build_sqrt_lasso: lambda must be positive");
  Rng root(seed ^ 0x5157ee1a50c3f001ULL);
  Rng mat = root.split(1), supp = root.split(2), vals = root.split(3), noise = root.split(4);

  Vector a = gaussian_matrix(n, p, mat);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i * p + j] * a[i * p + j];
    double nn = std::sqrt(s);
    if (nn == 0.0) nn = 1.0;
    for (std::size_t i = 0; i < n; ++i) a[i * p + j] /= nn;
  }
  LinearMap A = LinearMap::dense(n, p, std::move(a));

  std::size_t s_nat = std::max<std::size_t>(1, p / 10);
  Vector x_nat = sparse_ground_truth(p, s_nat, supp, vals);
  Vector b = A.apply(x_nat);
  for (std::size_t i = 0; i < n; ++i) b[i] += sigma_noise * noise.gaussian();

  ProblemInstance prob;
  prob.name = "sqrt_lasso";
  prob.f = ProximableTerm::weighted_l1(lambda, p);
  prob.mode = DualMode::bounded_dual;
  prob.dual_set = SetDescriptor::l2ball(1.0);
  prob.shift = std::move(b);
  prob.A = std::move(A);
  prob.default_beta0_scale = 1.0;
  prob.A.estimate_norm(1e-6, 1000, seed);
  return prob;
}

ProblemInstance build_degenerate_lp(std::size_t p, std::size_t n) {
  if (p < 2 || n < 2) throw std::invalid_argument("build_degenerate_lp: requires p,n >= 2");
  Vector a(n * p, 0.0);
  for (std::size_t j = 0; j + 1 < p; ++j) a[j] = 1.0;  // row 0: sum_{k<p} x_k
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < p; ++j) a[i * p + j] = -1.0;
    a[i * p + (p - 1)] = 1.0;  // x_p - sum_{k<p} x_k, repeated
  }
  Vector b(n, 0.0);
  b[0] = 1.0;

  const double inf = infinity();
  Vector lo(p, -inf), hi(p, inf);
  lo[p - 1] = 0.0;

  ProblemInstance prob;
  prob.name = "degenerate_lp";
  prob.f = ProximableTerm::indicator_box(std::move(lo), std::move(hi));
  prob.mode = DualMode::constrained;
  prob.dual_set = SetDescriptor::affine_zero();
  prob.shift = std::move(b);
  prob.A = LinearMap::dense(n, p, std::move(a));
  prob.default_beta0_scale = 1.0;

  SmoothTerm h;
  h.lipschitz = 0.0;
  std::size_t last = p - 1;
  h.value = [last](const Vector& x) { return 2.0 * x[last]; };
  h.grad = [last, p](const Vector&) {
    Vector g(p, 0.0);
    g[last] = 2.0;
    return g;
  };
  prob.h = std::move(h);

  Reference ref;
  ref.x_star.assign(p, 1.0 / static_cast<double>(p - 1));
  ref.x_star[p - 1] = 1.0;
  ref.obj_star = 2.0;
  Vector ystar(n, -2.0 / static_cast<double>(n - 1));
  ystar[0] = -2.0;
  ref.y_star = std::move(ystar);
  prob.reference = std::move(ref);

  prob.A.estimate_norm(1e-6, 1000, 0);
  return prob;
}

ProblemInstance build_basis_pursuit(LinearMap A, Vector b) {
  if (A.rows() != b.size()) throw std::invalid_argument("build_basis_pursuit: A/b mismatch");
  ProblemInstance prob;
  prob.name = "basis_pursuit";
  prob.f = ProximableTerm::weighted_l1(1.0, A.cols());
  prob.mode = DualMode::constrained;
  prob.dual_set = SetDescriptor::affine_zero();
  prob.shift = std::move(b);
  prob.A = std::move(A);
  prob.default_beta0_scale = 10.0;
  if (!prob.A.has_norm()) prob.A.estimate_norm(1e-6, 1000, 0);
  return prob;
}

ProblemInstance build_basis_pursuit(std::size_t n, std::size_t p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("build_basis_pursuit: empty dimensions");
  Rng root(seed ^ 0xb5a1c0f2d8e34407ULL);
  Rng mat = root.split(1), supp = root.split(2), vals = root.split(3);
  LinearMap A = LinearMap::dense(n, p, gaussian_matrix(n, p, mat));
  Vector x_nat = sparse_ground_truth(p, 5, supp, vals);
  Vector b = A.apply(x_nat);
  A.estimate_norm(1e-6, 1000, seed);
  return build_basis_pursuit(std::move(A), std::move(b));
}

ProblemInstance build_lad_lasso(std::size_t n, std::size_t p, std::size_t sparsity,
                                double sigma, std::uint64_t seed, double lambda) {
  if (n < 1 || p < 1) throw std::invalid_argument("build_lad_lasso: empty dimensions");
  if (lambda <= 0.0) lambda = 1.0 / static_cast<double>(n);
  Rng root(seed ^ 0x1adf00d5eed17b03ULL);
  Rng mat = root.split(1), supp = root.split(2), vals = root.split(3), noise = root.split(4);

  LinearMap A = LinearMap::dense(n, p, gaussian_matrix(n, p, mat));
  Vector x_nat = sparse_ground_truth(p, sparsity, supp, vals);
  Vector b = A.apply(x_nat);
  for (std::size_t i = 0; i < n; ++i) b[i] += sigma * noise.laplace();

  ProblemInstance prob;
  prob.name = "lad_lasso";
  prob.f = ProximableTerm::weighted_l1(lambda, p);
  prob.mode = DualMode::bounded_dual;
  prob.dual_set = SetDescriptor::box(Vector(n, -1.0), Vector(n, 1.0));
  prob.shift = std::move(b);
  prob.A = std::move(A);
  prob.default_beta0_scale = 100.0;
  prob.A.estimate_norm(1e-6, 1000, seed);
  return prob;
}

ProblemInstance build_l1_svm(const Dataset& data, double lambda) {
  const std::size_t n = data.n_samples();
  const std::size_t p = data.n_features;
  if (n == 0 || p == 0) throw std::invalid_argument("build_l1_svm: empty dataset");
  for (int l : data.labels)
    if (l != 1 && l != -1) throw std::invalid_argument("build_l1_svm: labels must be -1 or +1");

  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<std::size_t> col_idx;
  Vector values;
  const double scale = -1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, v] : data.rows[i]) {
      col_idx.push_back(j);
      values.push_back(scale * static_cast<double>(data.labels[i]) * v);
    }
    row_ptr[i + 1] = col_idx.size();
  }

  ProblemInstance prob;
  prob.name = "l1_svm";
  prob.f = ProximableTerm::weighted_l1(lambda, p);
  prob.mode = DualMode::bounded_dual;
  prob.dual_set = SetDescriptor::box(Vector(n, 0.0), Vector(n, 1.0));
  prob.shift = Vector(n, -1.0 / static_cast<double>(n));
  prob.A = LinearMap::csr(n, p, std::move(row_ptr), std::move(col_idx), std::move(values));
  prob.default_beta0_scale = 0.1;
  prob.A.estimate_norm(1e-6, 1000, 0);
  return prob;
}

ProblemInstance build_portfolio(const std::vector<Vector>& returns_rows, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("build_portfolio: epsilon must be positive");
  const std::size_t n = returns_rows.size();
  if (n == 0) throw std::invalid_argument("build_portfolio: no return rows");
  const std::size_t p = returns_rows[0].size();
  for (const Vector& r : returns_rows)
    if (r.size() != p) throw std::invalid_argument("build_portfolio: ragged return rows");

  Vector rho(p, 0.0);
  for (const Vector& r : returns_rows)
    for (std::size_t j = 0; j < p; ++j) rho[j] += r[j];
  for (double& v : rho) v /= static_cast<double>(n);

  Vector a(n * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) a[i * p + j] = returns_rows[i][j] - rho[j];

  ProblemInstance prob;
  prob.name = "portfolio";
  prob.f = ProximableTerm::indicator_simplex(p);
  prob.mode = DualMode::constrained;
  prob.dual_set = SetDescriptor::l2ball(std::sqrt(static_cast<double>(p) * epsilon));
  prob.shift = Vector(n, 0.0);
  prob.A = LinearMap::dense(n, p, std::move(a));
  prob.default_beta0_scale = 1.0;

  SmoothTerm h;
  h.lipschitz = 0.0;
  Vector rho_copy = rho;
  h.value = [rho_copy](const Vector& x) { return -dot(rho_copy, x); };
  h.grad = [rho_copy](const Vector&) { return scaled(rho_copy, -1.0); };
  prob.h = std::move(h);

  prob.A.estimate_norm(1e-6, 1000, 0);
  return prob;
}

Dataset make_synthetic_dataset(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng root(seed ^ 0xda7a5e7f00d1ce11ULL);
  Rng wstream = root.split(1), feat = root.split(2);
  Vector w(p);
  for (std::size_t j = 0; j < p; ++j) w[j] = wstream.gaussian();

  Dataset d;
  d.n_features = p;
  d.rows.resize(n);
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng row = feat.split(i);
    double margin = 0.0;
    d.rows[i].reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
      double v = row.gaussian();
      d.rows[i].emplace_back(j, v);
      margin += w[j] * v;
    }
    d.labels[i] = margin >= 0.0 ? 1 : -1;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Reference oracles
// ---------------------------------------------------------------------------

namespace {

bool is_identity(const LinearMap& A) {
  if (A.rows() != A.cols()) return false;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Vector e(A.cols(), 0.0);
    e[j] = 1.0;
    Vector col = A.apply(e);
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (col[i] != (i == j ? 1.0 : 0.0)) return false;
  }
  return true;
}

void attach_analytic(ProblemInstance& prob) {
  if (prob.name == "degenerate_lp") {
    if (!prob.reference) throw std::runtime_error("degenerate_lp: missing built-in reference");
    return;  // attached at build time
  }
  if (prob.name == "basis_pursuit" && is_identity(prob.A)) {
    Reference ref;
    ref.x_star = prob.shift;
    ref.obj_star = nrm1(prob.shift);
    Vector y(prob.shift.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = prob.shift[i] > 0.0 ? -1.0 : (prob.shift[i] < 0.0 ? 1.0 : 0.0);
    ref.y_star = std::move(y);
    prob.reference = std::move(ref);
    return;
  }
  throw std::runtime_error("reference_solution: analytic oracle not applicable to " + prob.name);
}

void attach_lp_exact(ProblemInstance& prob) {
  if (prob.mode != DualMode::constrained ||
      prob.dual_set.kind() != SetDescriptor::Kind::affine_zero ||
      prob.f.form() != ProximableTerm::Form::weighted_l1 || prob.h)
    throw std::runtime_error("reference_solution: lp_exact oracle not applicable to " + prob.name);
  const double lambda = prob.f.lambda();
  BasisPursuitSolution bp = solve_basis_pursuit_lp(prob.A, prob.shift);
  Reference ref;
  ref.x_star = bp.x_star;
  ref.obj_star = lambda * bp.f_star;
  ref.y_star = scaled(bp.y_star, lambda);
  prob.reference = std::move(ref);
}

void attach_long_run(ProblemInstance& prob, long budget) {
  if (prob.mode != DualMode::bounded_dual)
    throw std::runtime_error("reference_solution: long_run oracle needs a bounded dual domain");
  SolverConfig cfg;
  cfg.beta0 = prob.default_beta0_scale * prob.A.norm();
  cfg.omega = 1.2;
  cfg.m0 = 6;
  cfg.inner_variant = InnerVariant::apg_averaging;
  cfg.mode = DualMode::bounded_dual;
  cfg.iter_budget = budget;

  double best = infinity();
  Vector best_x;
  RunHooks hooks;
  hooks.on_iterate = [&](long, const Vector& x) {
    double v = prob.objective_value(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  };
  SolverResult res = run_asgard_dl(prob, cfg, hooks);

  Reference ref;
  ref.x_star = std::move(best_x);
  ref.obj_star = best;
  ref.y_star = res.dual_center;
  prob.reference = std::move(ref);
}

}  // namespace

void reference_solution(ProblemInstance& prob, OracleKind kind, long budget) {
  switch (kind) {
    case OracleKind::analytic:
      attach_analytic(prob);
      return;
    case OracleKind::lp_exact:
      attach_lp_exact(prob);
      return;
    case OracleKind::long_run:
      attach_long_run(prob, budget);
      return;
  }
  throw std::logic_error("reference_solution: unknown oracle kind");
}

}  // namespace pdopt
