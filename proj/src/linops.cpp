#include "pdopt/linops.hpp"

#include <cmath>

#include "pdopt/rng.hpp"

namespace pdopt {

LinearMap LinearMap::dense(std::size_t rows, std::size_t cols, Vector data) {
  if (data.size() != rows * cols)
    throw std::invalid_argument("LinearMap::dense: data size does not match rows*cols");
  LinearMap m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_ = true;
  m.data_ = std::move(data);
  return m;
}

LinearMap LinearMap::csr(std::size_t rows, std::size_t cols,
                         std::vector<std::size_t> row_ptr,
                         std::vector<std::size_t> col_idx, Vector values) {
  if (row_ptr.size() != rows + 1)
    throw std::invalid_argument("LinearMap::csr: row_ptr must have rows+1 entries");
  if (col_idx.size() != values.size())
    throw std::invalid_argument("LinearMap::csr: col_idx/values size mismatch");
  if (row_ptr.back() != values.size())
    throw std::invalid_argument("LinearMap::csr: row_ptr terminator mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1])
      throw std::invalid_argument("LinearMap::csr: row_ptr not nondecreasing");
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] >= cols) throw std::invalid_argument("LinearMap::csr: column index out of range");
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
        throw std::invalid_argument("LinearMap::csr: column indices must be strictly increasing per row");
    }
  }
  LinearMap m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_ = false;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

Vector LinearMap::apply(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("LinearMap::apply: length(x) != cols");
  Vector y(rows_, 0.0);
  if (dense_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      const double* row = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
      y[i] = acc;
    }
  }
  return y;
}

Vector LinearMap::adjoint_apply(const Vector& y) const {
  if (y.size() != rows_) throw std::invalid_argument("LinearMap::adjoint_apply: length(y) != rows");
  Vector x(cols_, 0.0);
  if (dense_) {
    // Accumulate row by row so each output entry sums over i in index order,
    // matching the CSR scatter below.
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* row = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) x[j] += row[j] * y[i];
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) x[col_idx_[k]] += values_[k] * y[i];
  }
  return x;
}

double LinearMap::estimate_norm(double rel_tol, std::size_t max_iters, std::uint64_t seed) {
  if (rel_tol <= 0.0) throw std::invalid_argument("estimate_norm: rel_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("estimate_norm: max_iters must be >= 1");

  Rng rng(seed ^ 0x6f7e15a1c9d3b5f7ULL);
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = rng.gaussian();
  double vn = nrm2(v);
  if (vn == 0.0) v[0] = 1.0, vn = 1.0;
  for (double& e : v) e /= vn;

  double sigma = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    Vector u = apply(v);
    double sigma_new = nrm2(u);  // sqrt of the Rayleigh quotient of A^T A at unit v
    if (sigma_new == 0.0) {
      cached_norm_ = 0.0;
      return 0.0;
    }
    if (it > 0 && std::fabs(sigma_new - sigma) < rel_tol * sigma_new) {
      cached_norm_ = sigma_new * 1.001;
      return sigma_new;
    }
    sigma = sigma_new;
    Vector w = adjoint_apply(u);
    double wn = nrm2(w);
    if (wn == 0.0) {
      cached_norm_ = sigma_new * 1.001;
      return sigma_new;
    }
    for (std::size_t j = 0; j < cols_; ++j) v[j] = w[j] / wn;
  }
  throw NormEstimateError("estimate_norm: no convergence within max_iters", sigma);
}

}  // namespace pdopt
