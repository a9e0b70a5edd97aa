#pragma once

#include <complex>
#include <vector>

#include "tklab/config.hpp"
#include "tklab/errors.hpp"

namespace tklab {

using Cx = std::complex<double>;

// Dense polynomial, coefficients ascending in degree.  The zero polynomial has
// an empty coefficient vector and degree -1.  Trailing coefficients smaller
// than leadingTol relative to the largest one are trimmed on construction.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Cx> coeffs, const ToleranceConfig& tol = {});

  static Poly constant(Cx c, const ToleranceConfig& tol = {});
  static Poly variable();  // z
  static Poly from_roots(const std::vector<Cx>& roots, Cx lead = 1.0,
                         const ToleranceConfig& tol = {});

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }
  Cx coeff(int k) const { return (k >= 0 && k < int(c_.size())) ? c_[k] : Cx(0.0); }
  const std::vector<Cx>& coeffs() const { return c_; }
  Cx lead() const { return c_.empty() ? Cx(0.0) : c_.back(); }
  double max_abs_coeff() const;
  double l1_at(double r) const;  // sum |c_k| r^k, the natural evaluation scale

  Cx eval(Cx z) const;  // Horner
  Poly derivative(const ToleranceConfig& tol = {}) const;
  Poly conj_coeffs(const ToleranceConfig& tol = {}) const;
  Poly reversed(const ToleranceConfig& tol = {}) const;  // coefficient reversal at current degree
  Poly shifted_up(int k, const ToleranceConfig& tol = {}) const;    // multiply by z^k
  Poly shifted_down(int k, const ToleranceConfig& tol = {}) const;  // divide by z^k; low coeffs must vanish
  int origin_multiplicity(const ToleranceConfig& tol = {}) const;

  // synthetic division by (z - r); the remainder is discarded
  Poly deflated(Cx r, const ToleranceConfig& tol = {}) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Cx s, const Poly& a);

 private:
  std::vector<Cx> c_;
};

// Root list with multiplicities.  Locations are sorted lexicographically by
// (re, im) and any two distinct entries are farther apart than rootMatchTol.
struct RootMultiset {
  std::vector<Cx> locations;
  std::vector<int> multiplicities;

  int total() const;
  bool empty() const { return locations.empty(); }
  int find(Cx z, double tol) const;  // index of the entry within tol, or -1
  void add(Cx z, int mult, double tol);
  void sort_canonical();
  std::vector<Cx> expanded() const;  // each location repeated by multiplicity
};

// true iff every root of a appears in b with at least the same multiplicity
bool roots_contained(const RootMultiset& a, const RootMultiset& b, double tol);
// multiset difference b - a; HypothesisViolated when a is not contained in b
RootMultiset roots_subtract(const RootMultiset& b, const RootMultiset& a, double tol);
RootMultiset roots_union_add(const RootMultiset& a, const RootMultiset& b, double tol);

// Companion-matrix eigenvalues (balanced), closed forms for degree <= 2,
// cluster-and-refine for multiple roots.  Every returned root r satisfies
// |p(r)| <= rootResidualTol * sum_k |c_k| max(1,|r|)^k.
RootMultiset poly_roots(const Poly& p, const ToleranceConfig& tol = {});

// relative residual used by poly_roots' acceptance test
double root_residual(const Poly& p, Cx r);

}  // namespace tklab
