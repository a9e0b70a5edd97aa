#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tklab/blaschke.hpp"
#include "tklab/ratfun.hpp"

namespace tklab {

enum class RankPolicy { reduce, require_independent };

// Finite-dimensional space of rational functions analytic across the closed
// disc.  The basis is kept as an independent subset of the caller's
// generators (never as synthetic row-reduced combinations), rewritten over
// the least common denominator; coefficients() column j holds the numerator
// of basis()[j] over common_denominator(), ascending degree.
class Subspace {
 public:
  Subspace() = default;  // the zero subspace

  int dim() const { return int(basis_.size()); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<RatFun>& basis() const { return basis_; }
  const Poly& common_denominator() const { return common_den_; }
  const Eigen::MatrixXcd& coefficients() const { return coeff_; }
  const RootMultiset& denominator_roots() const { return den_roots_; }

 private:
  friend Subspace make_subspace(const std::vector<RatFun>&, RankPolicy,
                                const ToleranceConfig&);
  std::vector<RatFun> basis_;
  Poly common_den_ = Poly::constant(1.0);
  RootMultiset den_roots_;
  Eigen::MatrixXcd coeff_;
};

// Validates that every generator has its poles outside the closed disc
// (NotInH2 inside, CircleSingularity in the dead zone), then selects a
// maximal independent subset in input order.  Rank decisions use an SVD
// cross-checked against column-pivoted QR; disagreement, or any dependency
// under require_independent, raises RankLoss.
Subspace make_subspace(const std::vector<RatFun>& generators,
                       RankPolicy policy = RankPolicy::reduce,
                       const ToleranceConfig& tol = {});

// true iff f lies in span(M).  f must be expressible over M's common
// denominator (otherwise false, not an error); a least-squares solve with
// relative residual below membershipTol decides.  The zero function belongs
// to every subspace.
bool membership(const RatFun& f, const Subspace& m, const ToleranceConfig& tol = {});

struct SubspaceRelations {
  bool included = false;  // m1 inside m2
  bool equal = false;
  Subspace sum;
  int intersectionDim = 0;
};

// Rank arithmetic over the joint denominator: m1 is included in m2 iff
// stacking adds nothing to m2, and dim(m1) + dim(m2) = dim(sum) + dim(cap).
SubspaceRelations subspace_relations(const Subspace& m1, const Subspace& m2,
                                     const ToleranceConfig& tol = {});

// exact (f - f(0))/z; the cancelled constant term vanishes identically, so
// no tolerance guess enters the shift
RatFun backward_shift(const RatFun& f, const ToleranceConfig& tol = {});

struct NearInvarianceReport {
  bool invariant = true;
  // an f in the space with f(0) = 0 whose backward shift leaves the space
  std::optional<RatFun> witness;
};

// Tests the defining property: every element vanishing at the origin keeps
// its backward shift inside the space.  The subspace of such elements is cut
// out by the single linear constraint f(0) = 0 on basis coefficients.
NearInvarianceReport is_nearly_sstar_invariant(const Subspace& m,
                                               const ToleranceConfig& tol = {});

// {f o psi : f in M}; composition with an inner psi preserves independence,
// so a numerical rank drop is reported as RankLoss rather than absorbed
Subspace apply_composition(const Subspace& m, const BlaschkeProduct& psi,
                           const ToleranceConfig& tol = {});

// {u f : f in M}
Subspace multiply_subspace(const RatFun& u, const Subspace& m,
                           const ToleranceConfig& tol = {});

}  // namespace tklab
