#include "tklab/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

constexpr double kOriginTol = 1e-12;

RootMultiset den_roots_of(const RatFun& f, const ToleranceConfig& tol) {
  if (f.den().degree() <= 0) return {};
  return poly_roots(f.den(), tol);
}

void check_h2_poles(const RootMultiset& dens, const ToleranceConfig& tol) {
  for (Cx r : dens.locations) {
    double m = std::abs(r);
    if (m <= 1.0 - tol.discMargin)
      fail(ErrorKind::NotInH2, "generator has a pole inside the disc");
    if (m < 1.0 + tol.discMargin)
      fail(ErrorKind::CircleSingularity, "generator has a pole in the circle dead zone");
  }
}

// least common denominator roots: max multiplicity across the inputs
RootMultiset lcm_roots(const std::vector<RootMultiset>& sets, double mtol) {
  RootMultiset out;
  for (const RootMultiset& s : sets) {
    for (size_t i = 0; i < s.locations.size(); ++i) {
      int at = out.find(s.locations[i], mtol);
      if (at < 0)
        out.add(s.locations[i], s.multiplicities[i], mtol);
      else
        out.multiplicities[size_t(at)] =
            std::max(out.multiplicities[size_t(at)], s.multiplicities[i]);
    }
  }
  out.sort_canonical();
  return out;
}

// numerator of f rewritten over the common denominator
Poly numerator_over(const RatFun& f, const RootMultiset& fDen,
                    const RootMultiset& lcd, const ToleranceConfig& tol) {
  RootMultiset cof = roots_subtract(lcd, fDen, tol.rootMatchTol);
  return f.num() * Poly::from_roots(cof.expanded(), 1.0, tol);
}

Eigen::VectorXcd padded_column(const Poly& p, Eigen::Index rows) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rows);
  for (int k = 0; k <= p.degree(); ++k) v[k] = p.coeff(k);
  return v;
}

// SVD rank cross-checked against column-pivoted QR; the two disagreeing means
// the instance sits too close to a rank decision to trust either answer.
int numeric_rank(const Eigen::MatrixXcd& a, const ToleranceConfig& tol) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  Eigen::MatrixXcd scaled = a;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    double n = scaled.col(j).norm();
    if (n > 0.0) scaled.col(j) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled);
  const auto& sv = svd.singularValues();
  int bySvd = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol.rankTol * sv[0]) ++bySvd;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(scaled);
  qr.setThreshold(tol.rankTol);
  int byQr = int(qr.rank());
  if (bySvd != byQr) fail(ErrorKind::RankLoss, "ambiguous numerical rank");
  return bySvd;
}

}  // namespace

Subspace make_subspace(const std::vector<RatFun>& generators, RankPolicy policy,
                       const ToleranceConfig& tol) {
  std::vector<RatFun> gens;
  std::vector<RootMultiset> dens;
  for (const RatFun& g : generators) {
    if (g.is_zero()) {
      if (policy == RankPolicy::require_independent)
        fail(ErrorKind::RankLoss, "zero generator in an independent family");
      continue;
    }
    RootMultiset d = den_roots_of(g, tol);
    check_h2_poles(d, tol);
    gens.push_back(g);
    dens.push_back(std::move(d));
  }
  Subspace out;
  if (gens.empty()) return out;

  RootMultiset lcd = lcm_roots(dens, tol.rootMatchTol);
  std::vector<Poly> nums;
  Eigen::Index rows = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    nums.push_back(numerator_over(gens[i], dens[i], lcd, tol));
    rows = std::max(rows, Eigen::Index(nums.back().degree()) + 1);
  }

  Eigen::MatrixXcd all(rows, Eigen::Index(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) all.col(Eigen::Index(i)) = padded_column(nums[i], rows);

  // greedy independent subset in input order
  std::vector<Eigen::Index> kept;
  Eigen::MatrixXcd acc(rows, 0);
  for (Eigen::Index j = 0; j < all.cols(); ++j) {
    Eigen::MatrixXcd trial(rows, acc.cols() + 1);
    trial << acc, all.col(j);
    if (numeric_rank(trial, tol) == int(trial.cols())) {
      acc = std::move(trial);
      kept.push_back(j);
    } else if (policy == RankPolicy::require_independent) {
      fail(ErrorKind::RankLoss, "generators are numerically dependent");
    }
  }
  if (numeric_rank(all, tol) != int(kept.size()))
    fail(ErrorKind::RankLoss, "independent subset does not span the generators");

  for (Eigen::Index j : kept) out.basis_.push_back(gens[size_t(j)]);
  out.common_den_ = Poly::from_roots(lcd.expanded(), 1.0, tol);
  out.den_roots_ = lcd;
  out.coeff_ = std::move(acc);
  return out;
}

bool membership(const RatFun& f, const Subspace& m, const ToleranceConfig& tol) {
  if (f.is_zero()) return true;
  if (m.is_zero()) return false;
  RootMultiset fd = den_roots_of(f, tol);
  if (!roots_contained(fd, m.denominator_roots(), tol.rootMatchTol)) return false;
  Poly target = numerator_over(f, fd, m.denominator_roots(), tol);

  Eigen::Index rows = std::max(m.coefficients().rows(), Eigen::Index(target.degree()) + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, m.coefficients().cols());
  a.topRows(m.coefficients().rows()) = m.coefficients();
  Eigen::VectorXcd b = padded_column(target, rows);

  Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(b);
  double rel = (a * x - b).norm() / b.norm();
  return rel < tol.membershipTol;
}

SubspaceRelations subspace_relations(const Subspace& m1, const Subspace& m2,
                                     const ToleranceConfig& tol) {
  std::vector<RatFun> gens = m1.basis();
  gens.insert(gens.end(), m2.basis().begin(), m2.basis().end());
  SubspaceRelations rel;
  rel.sum = make_subspace(gens, RankPolicy::reduce, tol);
  int dimSum = rel.sum.dim();
  rel.included = dimSum == m2.dim();
  rel.equal = rel.included && m1.dim() == m2.dim();
  rel.intersectionDim = m1.dim() + m2.dim() - dimSum;
  return rel;
}

RatFun backward_shift(const RatFun& f, const ToleranceConfig& tol) {
  if (f.is_zero()) return RatFun();
  const Poly& p = f.num();
  const Poly& d = f.den();
  Cx d0 = d.eval(0.0);
  if (std::abs(d0) <= tol.evalPoleTol * d.max_abs_coeff())
    fail(ErrorKind::NotInH2, "backward shift of a function with a pole at the origin");
  Cx p0 = p.eval(0.0);
  // d0*p - p0*d has constant term d0*p0 - p0*d0 = 0 exactly, so the division
  // by z is a plain coefficient shift
  Poly num = d0 * p - p0 * d;
  if (num.is_zero()) return RatFun();
  return RatFun((1.0 / d0) * num.shifted_down(1, tol), d, tol);
}

NearInvarianceReport is_nearly_sstar_invariant(const Subspace& m, const ToleranceConfig& tol) {
  if (m.is_zero()) fail(ErrorKind::ValidationError, "near-invariance test needs a nonzero space");

  const Eigen::MatrixXcd& c = m.coefficients();
  Cx denAt0 = m.common_denominator().eval(0.0);
  std::vector<Cx> vals(size_t(m.dim()));
  double scale = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    vals[size_t(i)] = c(0, i) / denAt0;  // basis value at the origin
    scale = std::max(scale, std::abs(vals[size_t(i)]));
  }

  // basis of {f in m : f(0) = 0}: either everything vanishes already, or one
  // pivot column absorbs the constraint
  std::vector<RatFun> zeroAtOrigin;
  double colScale = 0.0;
  for (int i = 0; i < m.dim(); ++i) colScale = std::max(colScale, c.col(i).norm());
  if (scale <= kOriginTol * std::max(1.0, colScale / std::abs(denAt0))) {
    zeroAtOrigin = m.basis();
  } else {
    int pivot = 0;
    for (int i = 1; i < m.dim(); ++i)
      if (std::abs(vals[size_t(i)]) > std::abs(vals[size_t(pivot)])) pivot = i;
    for (int i = 0; i < m.dim(); ++i) {
      if (i == pivot) continue;
      Cx lambda = vals[size_t(i)] / vals[size_t(pivot)];
      Eigen::VectorXcd combo = c.col(i) - lambda * c.col(pivot);
      std::vector<Cx> coeffs(combo.data(), combo.data() + combo.size());
      Poly num(std::move(coeffs), tol);
      if (num.is_zero()) continue;
      zeroAtOrigin.emplace_back(num, m.common_denominator(), tol);
    }
  }

  for (const RatFun& f : zeroAtOrigin) {
    RatFun shifted = backward_shift(f, tol);
    if (!membership(shifted, m, tol)) return {false, f};
  }
  return {true, std::nullopt};
}

Subspace apply_composition(const Subspace& m, const BlaschkeProduct& psi,
                           const ToleranceConfig& tol) {
  if (m.is_zero()) return {};
  RatFun pr = psi.to_ratfun(tol);
  std::vector<RatFun> composed;
  composed.reserve(size_t(m.dim()));
  for (const RatFun& f : m.basis()) composed.push_back(rat_compose(f, pr, tol));
  return make_subspace(composed, RankPolicy::require_independent, tol);
}

Subspace multiply_subspace(const RatFun& u, const Subspace& m, const ToleranceConfig& tol) {
  if (u.is_zero() || m.is_zero()) return {};
  std::vector<RatFun> products;
  products.reserve(size_t(m.dim()));
  for (const RatFun& f : m.basis()) products.push_back(u * f);
  return make_subspace(products, RankPolicy::require_independent, tol);
}

}  // namespace tklab
