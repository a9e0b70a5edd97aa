#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace tklab {

// splitmix64 stream.  Standard-library distributions are implementation
// defined, so all randomness goes through this to keep runs reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static Rng for_trial(uint64_t seed, uint64_t trial) {
    Rng mix(seed);
    mix.state_ ^= 0x9e3779b97f4a7c15ULL * (trial + 1);
    mix.next();
    return mix;
  }

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return double(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int lo, int hi) { return lo + int(next() % uint64_t(hi - lo + 1)); }
  bool coin() { return (next() & 1) != 0; }

  std::complex<double> unit() {
    double t = uniform(0.0, 2.0 * M_PI);
    return {std::cos(t), std::sin(t)};
  }
  // modulus uniform in [r0, r1], phase uniform
  std::complex<double> annulus(double r0, double r1) { return uniform(r0, r1) * unit(); }

 private:
  uint64_t state_;
};

}  // namespace tklab
