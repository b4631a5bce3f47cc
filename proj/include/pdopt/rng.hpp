#ifndef PDOPT_RNG_HPP
#define PDOPT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pdopt {

// Splitmix64 generator. 64-bit state, cheap to split into independent
// substreams, identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Box-Muller; draws two uniforms per call.
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Laplace(0,1) by inverse CDF.
  double laplace() {
    double u = uniform();
    double t = u - 0.5;
    double sign = t >= 0.0 ? 1.0 : -1.0;
    return sign * std::log(1.0 - 2.0 * std::fabs(t));
  }

  // Derive an independent substream (splittable per column, per purpose).
  Rng split(std::uint64_t salt) {
    return Rng(next_u64() ^ (salt * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
  }

 private:
  std::uint64_t state_;
};

}  // namespace pdopt

#endif  // PDOPT_RNG_HPP
