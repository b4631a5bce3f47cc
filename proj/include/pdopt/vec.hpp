#ifndef PDOPT_VEC_HPP
#define PDOPT_VEC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pdopt {

using Vector = std::vector<double>;

// All reductions run sequentially in index order; solver determinism
// depends on it.

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double nrm2_sq(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double nrm2(const Vector& a) { return std::sqrt(nrm2_sq(a)); }

inline double nrm1(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += std::fabs(v);
  return s;
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

// out = a + c*b
inline void axpy(double c, const Vector& b, Vector& a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline Vector add(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector scaled(const Vector& a, double c) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// (1-t)*a + t*b
inline Vector convex_combo(const Vector& a, const Vector& b, double t) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - t) * a[i] + t * b[i];
  return r;
}

inline double dist2(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace pdopt

#endif  // PDOPT_VEC_HPP
