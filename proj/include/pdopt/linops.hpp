#ifndef PDOPT_LINOPS_HPP
#define PDOPT_LINOPS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pdopt/vec.hpp"

namespace pdopt {

// Thrown when the power iteration fails to reach the requested relative
// tolerance; carries the last estimate.
class NormEstimateError : public std::runtime_error {
 public:
  NormEstimateError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

// Linear operator over a dense row-major or CSR matrix. Immutable after
// construction except for the one-shot norm cache, which must be filled
// before the operator is shared across threads.
class LinearMap {
 public:
  LinearMap() = default;  // empty 0x0 operator

  static LinearMap dense(std::size_t rows, std::size_t cols, Vector data);
  static LinearMap csr(std::size_t rows, std::size_t cols,
                       std::vector<std::size_t> row_ptr,
                       std::vector<std::size_t> col_idx, Vector values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_dense() const { return dense_; }

  Vector apply(const Vector& x) const;
  Vector adjoint_apply(const Vector& y) const;

  // Power iteration on A^T A from a seeded start. Returns the raw estimate
  // and caches a 0.1% overestimate so step sizes derived from norm() never
  // exceed their theoretical limits.
  double estimate_norm(double rel_tol = 1e-6, std::size_t max_iters = 1000,
                       std::uint64_t seed = 0);

  bool has_norm() const { return cached_norm_.has_value(); }
  double norm() const {
    if (!cached_norm_) throw std::logic_error("LinearMap: operator norm not estimated");
    return *cached_norm_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  bool dense_ = true;
  Vector data_;  // dense storage, row-major
  std::vector<std::size_t> row_ptr_, col_idx_;
  Vector values_;  // CSR storage
  std::optional<double> cached_norm_;
};

}  // namespace pdopt

#endif  // PDOPT_LINOPS_HPP
