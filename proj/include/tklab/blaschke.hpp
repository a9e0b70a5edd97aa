#pragma once

#include <vector>

#include "tklab/ratfun.hpp"

namespace tklab {

// Finite product of disc automorphism factors times a unimodular constant.
// Zeros live strictly inside the disc (modulus <= 1 - discMargin).
struct BlaschkeProduct {
  RootMultiset zeros;
  Cx unimodular = Cx(1.0);

  static BlaschkeProduct one() { return {}; }
  static BlaschkeProduct from_zeros(std::vector<Cx> zs, Cx constant = Cx(1.0),
                                    const ToleranceConfig& tol = {});

  int degree() const { return zeros.total(); }
  bool is_one() const { return zeros.empty(); }
  bool has_origin_zero() const;
  int origin_multiplicity() const;

  Cx eval(Cx z) const;  // direct factor product, no expansion
  RatFun to_ratfun(const ToleranceConfig& tol = {}) const;
  Poly denominator(const ToleranceConfig& tol = {}) const;  // prod (1 - conj(a) z)
};

BlaschkeProduct blaschke_mul(const BlaschkeProduct& a, const BlaschkeProduct& b,
                             const ToleranceConfig& tol = {});
// exact multiset division; HypothesisViolated when b does not divide a
BlaschkeProduct blaschke_div(const BlaschkeProduct& a, const BlaschkeProduct& b,
                             const ToleranceConfig& tol = {});
bool blaschke_divides(const BlaschkeProduct& a, const BlaschkeProduct& b,
                      const ToleranceConfig& tol = {});
BlaschkeProduct blaschke_gcd(const std::vector<BlaschkeProduct>& bs,
                             const ToleranceConfig& tol = {});
BlaschkeProduct blaschke_lcm(const std::vector<BlaschkeProduct>& bs,
                             const ToleranceConfig& tol = {});
bool is_automorphism(const BlaschkeProduct& b);

// theta(psi(z)) as a Blaschke product: zeros are the psi-preimages of theta's
// zeros (verified by evaluation), the constant is recovered on the circle.
BlaschkeProduct blaschke_compose(const BlaschkeProduct& theta, const BlaschkeProduct& psi,
                                 const ToleranceConfig& tol = {});

// prepend one zero at the origin (multiply by z)
BlaschkeProduct blaschke_times_z(const BlaschkeProduct& b, const ToleranceConfig& tol = {});

// Rational function with no zeros and no poles in the closed disc
// (all roots at modulus >= 1 + discMargin).  The value is kept exactly as
// given: certificates depend on the identity holding without a phase fix.
struct OuterRational {
  RatFun value;
  static OuterRational checked(RatFun v, const ToleranceConfig& tol = {});
};

// Element of the Hardy space with cached inner-outer factorization:
// value = inner * outer exactly as rational functions.
struct H2Rational {
  RatFun value;
  BlaschkeProduct inner;
  OuterRational outer;

  bool is_zero() const { return value.is_zero(); }
  static H2Rational zero();
};

// Splits f into Blaschke inner part and outer part.  NotInH2 when a pole lies
// inside the closed disc (up to discMargin), CircleZero when a zero falls in
// the dead zone around the circle.
H2Rational inner_outer_factorize(const RatFun& f, const ToleranceConfig& tol = {});

// true iff the conj-reflection of r has no poles at modulus <= 1 - discMargin,
// i.e. r is the boundary conjugate of a function analytic across the disc
bool smirnov_conj_member(const RatFun& r, const ToleranceConfig& tol = {});

}  // namespace tklab
