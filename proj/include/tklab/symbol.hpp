#pragma once

#include <optional>

#include "tklab/blaschke.hpp"

namespace tklab {

// Circle function conj(anti(z)) * ana(z) * z^power.  Both sides are rational
// with every zero and pole at least discMargin away from the unit circle, and
// neither side carries zeros or poles at the origin (those are folded into
// power on construction).  Root multisets of all four polynomials are cached.
class ToeplitzSymbol {
 public:
  ToeplitzSymbol() : anti_(RatFun::constant(1.0)), ana_(RatFun::constant(1.0)), power_(0) {}
  ToeplitzSymbol(RatFun anti, RatFun ana, int power, const ToleranceConfig& tol = {});

  static ToeplitzSymbol constant_one() { return ToeplitzSymbol(); }
  // z^k as a symbol
  static ToeplitzSymbol z_power(int k, const ToleranceConfig& tol = {});
  // conj(b) for a Blaschke product b
  static ToeplitzSymbol conj_blaschke(const BlaschkeProduct& b, const ToleranceConfig& tol = {});
  // plain analytic factor
  static ToeplitzSymbol analytic(RatFun b, const ToleranceConfig& tol = {});
  // plain conjugate factor
  static ToeplitzSymbol conjugate(RatFun a, const ToleranceConfig& tol = {});

  const RatFun& anti() const { return anti_; }
  const RatFun& ana() const { return ana_; }
  int power() const { return power_; }

  const RootMultiset& anti_num_roots() const { return anti_num_roots_; }
  const RootMultiset& anti_den_roots() const { return anti_den_roots_; }
  const RootMultiset& ana_num_roots() const { return ana_num_roots_; }
  const RootMultiset& ana_den_roots() const { return ana_den_roots_; }

  Cx eval_circle(Cx zeta) const;  // conj(anti(zeta)) * ana(zeta) * zeta^power
  RatFun realize(const ToleranceConfig& tol = {}) const;  // equal rational function on the circle

 private:
  RatFun anti_, ana_;
  int power_;
  RootMultiset anti_num_roots_, anti_den_roots_, ana_num_roots_, ana_den_roots_;
};

ToeplitzSymbol symbol_mul(const ToeplitzSymbol& a, const ToeplitzSymbol& b,
                          const ToleranceConfig& tol = {});
ToeplitzSymbol symbol_reciprocal(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});
// complex conjugate of the whole symbol on the circle
ToeplitzSymbol symbol_conj(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});
// s(psi(z)) for an inner psi; negative powers ride on the conjugate side
ToeplitzSymbol symbol_compose(const ToeplitzSymbol& s, const BlaschkeProduct& psi,
                              const ToleranceConfig& tol = {});

// Zeros-minus-poles count from the cached root locations, cross-checked
// against trapezoidal argument-principle integration over 4096 circle
// samples.  The two routes must agree exactly as integers.
int winding_number(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});

// sigma = sigma_minus * z^kappa * sigma_plus with sigma_minus invertible on
// the conjugate-analytic side (zeros and poles inside the disc, finite
// nonzero limit at infinity) and sigma_plus invertible on the analytic side
// (zeros and poles outside the closed disc).
struct WienerHopfFactorization {
  RatFun sigma_minus;
  int kappa = 0;
  RatFun sigma_plus;
};

WienerHopfFactorization wiener_hopf(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});

// kernel-level comparisons decided purely on the symbol algebra
bool kernels_equal_symbolic(const ToeplitzSymbol& g, const ToeplitzSymbol& h,
                            const ToleranceConfig& tol = {});
// Ker of g contained in Ker of h; TrivialKernel unless both windings are negative
bool kernel_included_symbolic(const ToeplitzSymbol& g, const ToeplitzSymbol& h,
                              const ToleranceConfig& tol = {});

// g1 = h_minus * g2 * h_plus with both factors invertible on their side
struct EquivalenceWitness {
  RatFun h_plus;   // invertible analytic: zeros and poles outside the closed disc
  RatFun h_minus;  // invertible conjugate-analytic: zeros and poles inside the disc
};

std::optional<EquivalenceWitness> symbols_equivalent(const ToeplitzSymbol& g1,
                                                     const ToeplitzSymbol& g2,
                                                     const ToleranceConfig& tol = {});

}  // namespace tklab
