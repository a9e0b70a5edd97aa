#pragma once

#include "tklab/poly.hpp"

namespace tklab {

// the unique point w with conj(w) * r = 1; used wherever a factor crosses
// between the analytic and co-analytic side, so that both sides derive the
// reflected location from the same floating-point expression
inline Cx reflect_root(Cx r) { return Cx(1.0) / std::conj(r); }

// Quotient of polynomials.  The denominator is monic and nonzero, and num/den
// share no roots within rootMatchTol (common roots are cancelled by matching
// the two root multisets, never by Euclidean division).  The zero function is
// num = 0, den = 1.
//
// Every RatFun carries the root multisets of its numerator and denominator.
// Products, quotients, reciprocals and reflections are computed on those
// multisets, so a factor travelling through a chain of operations keeps its
// exact floating-point location and cancels bit-for-bit against itself; only
// genuinely additive operations (sums, composition) factor polynomials anew.
class RatFun {
 public:
  RatFun() : den_(Poly::constant(1.0)) {}
  RatFun(Poly num, Poly den, const ToleranceConfig& tol = {});

  // build from factored data; matching num/den roots cancel, leads divide out
  static RatFun from_factors(const RootMultiset& numRoots, Cx numLead,
                             const RootMultiset& denRoots, Cx denLead,
                             const ToleranceConfig& tol = {});

  static RatFun constant(Cx c, const ToleranceConfig& tol = {});
  static RatFun variable();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const RootMultiset& num_roots() const { return numRoots_; }
  const RootMultiset& den_roots() const { return denRoots_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  // PoleEvaluation when |den(z)| falls below evalPoleTol relative to its scale
  Cx eval(Cx z, const ToleranceConfig& tol = {}) const;

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  friend RatFun operator*(Cx s, const RatFun& a);

 private:
  Poly num_, den_;
  RootMultiset numRoots_, denRoots_;
};

// f(g(z)) as a rational function
RatFun rat_compose(const RatFun& f, const RatFun& g, const ToleranceConfig& tol = {});

// The function whose boundary values are conj(f) on the unit circle:
// coefficients conjugated, z replaced by 1/z, cleared of negative powers.
RatFun conj_reflect(const RatFun& f, const ToleranceConfig& tol = {});

RatFun reciprocal(const RatFun& f, const ToleranceConfig& tol = {});

// max relative deviation |f - g| / (1 + |f|) over n unit-circle samples;
// any sample where either side hits a pole raises PoleEvaluation
double circle_distance(const RatFun& f, const RatFun& g, int n = 64,
                       const ToleranceConfig& tol = {});

std::vector<Cx> unit_circle_points(int n);

}  // namespace tklab
