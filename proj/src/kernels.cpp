#include "tklab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

// f has all poles strictly inside the disc and vanishes at infinity, i.e. its
// Laurent expansion on the circle carries only negative powers
bool only_negative_modes(const RatFun& f, const ToleranceConfig& tol) {
  if (f.is_zero()) return true;
  if (f.num().degree() >= f.den().degree()) return false;
  for (Cx p : f.den_roots().locations)
    if (std::abs(p) > 1.0 - tol.discMargin) return false;
  return true;
}

void annihilation_check(const ToeplitzSymbol& s, const Subspace& kernel,
                        const ToleranceConfig& tol) {
  RatFun r = s.realize(tol);
  for (const RatFun& f : kernel.basis())
    if (!only_negative_modes(r * f, tol))
      fail(ErrorKind::InconsistencyDetected,
           "kernel element fails the annihilation test against its symbol");
}

// the symbol whose circle values are h(zeta) for an invertible
// conjugate-analytic h (zeros and poles inside the disc)
ToeplitzSymbol minus_side(const RatFun& h, const ToleranceConfig& tol) {
  return ToeplitzSymbol(conj_reflect(h, tol), RatFun::constant(1.0), 0, tol);
}

void check_invertible_analytic(const Poly& p, double bound, bool wantOutside,
                               const char* what, const ToleranceConfig& tol) {
  if (p.degree() < 1) return;
  for (Cx r : poly_roots(p, tol).locations) {
    bool ok = wantOutside ? std::abs(r) >= bound : std::abs(r) <= bound;
    if (!ok) fail(ErrorKind::HypothesisViolated, what);
  }
}

void check_witness(const EquivalenceWitness& w, const ToleranceConfig& tol) {
  if (w.h_plus.is_zero() || w.h_minus.is_zero())
    fail(ErrorKind::HypothesisViolated, "equivalence witness with a zero factor");
  const char* plusMsg = "witness plus factor must be invertible outside the closed disc";
  check_invertible_analytic(w.h_plus.num(), 1.0 + tol.discMargin, true, plusMsg, tol);
  check_invertible_analytic(w.h_plus.den(), 1.0 + tol.discMargin, true, plusMsg, tol);
  const char* minusMsg = "witness minus factor must be invertible inside the disc";
  check_invertible_analytic(w.h_minus.num(), 1.0 - tol.discMargin, false, minusMsg, tol);
  check_invertible_analytic(w.h_minus.den(), 1.0 - tol.discMargin, false, minusMsg, tol);
  if (w.h_minus.num().degree() != w.h_minus.den().degree())
    fail(ErrorKind::HypothesisViolated, "witness minus factor must be finite and nonzero at infinity");
}

Cx value_at_origin(const RatFun& f, const ToleranceConfig& tol) { return f.eval(Cx(0.0), tol); }

// multiplication by z as a factored operation, so a basis built as
// z^j * f keeps f's root values verbatim in every element
RatFun times_z(const RatFun& f, const ToleranceConfig& tol) {
  RootMultiset origin;
  origin.locations.push_back(Cx(0.0));
  origin.multiplicities.push_back(1);
  return RatFun::from_factors(origin, Cx(1.0), RootMultiset{}, Cx(1.0), tol) * f;
}

}  // namespace

Subspace toeplitz_kernel(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  WienerHopfFactorization wh = wiener_hopf(s, tol);
  int dim = std::max(-wh.kappa, 0);
  if (dim == 0) return {};
  RatFun cur = reciprocal(wh.sigma_plus, tol);
  std::vector<RatFun> gens;
  gens.reserve(size_t(dim));
  for (int j = 0; j < dim; ++j) {
    gens.push_back(cur);
    cur = times_z(cur, tol);
  }
  Subspace kernel = make_subspace(gens, RankPolicy::require_independent, tol);
  annihilation_check(s, kernel, tol);
  return kernel;
}

Subspace model_space(const BlaschkeProduct& theta, const ToleranceConfig& tol) {
  if (theta.degree() == 0) return {};
  RatFun cur(Poly::constant(1.0), theta.denominator(tol), tol);
  std::vector<RatFun> gens;
  gens.reserve(size_t(theta.degree()));
  for (int j = 0; j < theta.degree(); ++j) {
    gens.push_back(cur);
    cur = times_z(cur, tol);
  }
  return make_subspace(gens, RankPolicy::require_independent, tol);
}

MinimalKernel minimal_kernel_of_vector(const H2Rational& h, const ToleranceConfig& tol) {
  if (h.is_zero()) fail(ErrorKind::DegenerateInput, "minimal kernel of the zero function");
  RatFun zio = RatFun::variable() * h.inner.to_ratfun(tol) * h.outer.value;
  ToeplitzSymbol symbol(zio, reciprocal(h.outer.value, tol), 0, tol);
  Subspace kernel = toeplitz_kernel(symbol, tol);
  if (!membership(h.value, kernel, tol))
    fail(ErrorKind::InconsistencyDetected, "minimal kernel does not contain its own vector");
  return {symbol, kernel};
}

std::optional<MaximalityCertificate> is_maximal_vector(const H2Rational& k,
                                                       const ToeplitzSymbol& s,
                                                       const ToleranceConfig& tol) {
  if (k.is_zero()) fail(ErrorKind::DegenerateInput, "maximality of the zero function");
  if (!membership(k.value, toeplitz_kernel(s, tol), tol))
    fail(ErrorKind::NotInKernel, "candidate vector lies outside the kernel");

  RatFun p = conj_reflect(RatFun::variable() * s.realize(tol) * k.value, tol);
  for (const RootMultiset* rs : {&p.num_roots(), &p.den_roots()}) {
    for (Cx r : rs->locations) {
      double m = std::abs(r);
      if (m <= 1.0 - tol.discMargin) return std::nullopt;
      if (m < 1.0 + tol.discMargin)
        fail(ErrorKind::CircleSingularity, "witness root in the dead zone around the circle");
    }
  }

  // the defining identity k = s^{-1} conj(z) conj(p), sampled on the circle
  for (Cx zeta : unit_circle_points(64)) {
    Cx lhs = k.value.eval(zeta, tol);
    Cx rhs = std::conj(zeta) * std::conj(p.eval(zeta, tol)) / s.eval_circle(zeta);
    if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(lhs)))
      fail(ErrorKind::InconsistencyDetected, "maximality witness fails its circle identity");
  }
  return MaximalityCertificate{k, s, OuterRational::checked(p, tol)};
}

MaximalityCertificate canonical_maximal_vector(const ToeplitzSymbol& s,
                                               const ToleranceConfig& tol) {
  WienerHopfFactorization wh = wiener_hopf(s, tol);
  if (wh.kappa >= 0) fail(ErrorKind::TrivialKernel, "trivial kernel has no maximal vector");
  RatFun k = reciprocal(wh.sigma_plus, tol);
  for (int j = 0; j < -wh.kappa - 1; ++j) k = times_z(k, tol);
  auto cert = is_maximal_vector(inner_outer_factorize(k, tol), s, tol);
  if (!cert)
    fail(ErrorKind::InconsistencyDetected, "top kernel vector failed its maximality certificate");
  return *cert;
}

ToeplitzSymbol minimal_kernel_of_composed(const ToeplitzSymbol& F, const BlaschkeProduct& psi,
                                          const ToleranceConfig& tol) {
  if (winding_number(F, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "composition needs a nontrivial kernel");
  ToeplitzSymbol psiOverZ(RatFun::constant(1.0), psi.to_ratfun(tol), -1, tol);
  return symbol_mul(symbol_compose(F, psi, tol), psiOverZ, tol);
}

BlaschkeProduct minimal_model_containing_composition(const BlaschkeProduct& theta,
                                                     const BlaschkeProduct& psi,
                                                     const ToleranceConfig& tol) {
  if (theta.degree() < 1)
    fail(ErrorKind::DegenerateInput, "model space of a constant inner function is trivial");
  BlaschkeProduct comp = blaschke_compose(theta, psi, tol);
  if (theta.has_origin_zero())
    return blaschke_div(blaschke_times_z(comp, tol), psi, tol);
  if (psi.has_origin_zero()) return comp;
  return blaschke_times_z(comp, tol);
}

std::vector<BlaschkeProduct> maximal_proper_divisors(const BlaschkeProduct& v,
                                                     const ToleranceConfig& tol) {
  (void)tol;
  std::vector<BlaschkeProduct> out;
  for (size_t i = 0; i < v.zeros.locations.size(); ++i) {
    BlaschkeProduct d;
    d.zeros = v.zeros;
    if (--d.zeros.multiplicities[i] == 0) {
      d.zeros.locations.erase(d.zeros.locations.begin() + long(i));
      d.zeros.multiplicities.erase(d.zeros.multiplicities.begin() + long(i));
    }
    out.push_back(std::move(d));
  }
  return out;
}

ToeplitzSymbol minimal_kernel_of_multiplied(const H2Rational& u, const ToeplitzSymbol& g,
                                            const ToleranceConfig& tol) {
  if (u.is_zero()) fail(ErrorKind::DegenerateInput, "multiplication by the zero function");
  if (winding_number(g, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "multiplication needs a nontrivial kernel");
  ToeplitzSymbol factor(u.value, reciprocal(u.outer.value, tol), 0, tol);
  return symbol_mul(g, factor, tol);
}

ToeplitzSymbol multiplied_kernel_exact(const H2Rational& u, const ToeplitzSymbol& F,
                                       const ToleranceConfig& tol) {
  if (u.is_zero()) fail(ErrorKind::DegenerateInput, "multiplication by the zero function");
  if (!u.inner.is_one())
    fail(ErrorKind::HypothesisViolated, "exact multiplied kernel needs an outer multiplier");
  ToeplitzSymbol factor(RatFun::constant(1.0), reciprocal(u.value, tol), 0, tol);
  return symbol_mul(F, factor, tol);
}

ToeplitzSymbol minimal_kernel_pre_multiplied_composed(const H2Rational& u,
                                                      const ToeplitzSymbol& F,
                                                      const BlaschkeProduct& psi,
                                                      const ToleranceConfig& tol) {
  if (u.is_zero()) fail(ErrorKind::DegenerateInput, "multiplication by the zero function");
  if (winding_number(F, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "composition needs a nontrivial kernel");
  RatFun pr = psi.to_ratfun(tol);
  ToeplitzSymbol weight(rat_compose(u.value, pr, tol),
                        reciprocal(rat_compose(u.outer.value, pr, tol), tol), 0, tol);
  ToeplitzSymbol psiOverZ(RatFun::constant(1.0), pr, -1, tol);
  return symbol_mul(symbol_mul(symbol_compose(F, psi, tol), weight, tol), psiOverZ, tol);
}

ToeplitzSymbol minimal_kernel_post_multiplied_composed(const H2Rational& u,
                                                       const ToeplitzSymbol& F,
                                                       const BlaschkeProduct& psi,
                                                       const ToleranceConfig& tol) {
  if (u.is_zero()) fail(ErrorKind::DegenerateInput, "multiplication by the zero function");
  if (winding_number(F, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "composition needs a nontrivial kernel");
  RatFun pr = psi.to_ratfun(tol);
  ToeplitzSymbol weight(u.value, reciprocal(u.outer.value, tol), 0, tol);
  ToeplitzSymbol psiOverZ(RatFun::constant(1.0), pr, -1, tol);
  return symbol_mul(symbol_mul(symbol_compose(F, psi, tol), weight, tol), psiOverZ, tol);
}

BlaschkeProduct minimal_model_weighted_pre(const BlaschkeProduct& u,
                                           const BlaschkeProduct& theta,
                                           const BlaschkeProduct& psi,
                                           const ToleranceConfig& tol) {
  if (theta.degree() < 1)
    fail(ErrorKind::DegenerateInput, "model space of a constant inner function is trivial");
  BlaschkeProduct prod =
      blaschke_mul(blaschke_compose(theta, psi, tol), blaschke_compose(u, psi, tol), tol);
  if (theta.has_origin_zero() || u.has_origin_zero())
    return blaschke_div(blaschke_times_z(prod, tol), psi, tol);
  if (psi.has_origin_zero()) return prod;
  return blaschke_times_z(prod, tol);
}

BlaschkeProduct minimal_model_weighted_post(const BlaschkeProduct& u,
                                            const BlaschkeProduct& theta,
                                            const BlaschkeProduct& psi,
                                            const ToleranceConfig& tol) {
  if (theta.degree() < 1)
    fail(ErrorKind::DegenerateInput, "model space of a constant inner function is trivial");
  BlaschkeProduct prod = blaschke_mul(blaschke_compose(theta, psi, tol), u, tol);
  if (theta.has_origin_zero())
    return blaschke_div(blaschke_times_z(prod, tol), psi, tol);
  if (psi.has_origin_zero()) return prod;
  return blaschke_times_z(prod, tol);
}

MappingReport composition_maps_into(const ToeplitzSymbol& F, const BlaschkeProduct& psi,
                                    const ToeplitzSymbol& H, const ToleranceConfig& tol) {
  if (winding_number(F, tol) >= 0 || winding_number(H, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "the mapping question needs two nontrivial kernels");

  MappingReport report;
  Subspace target = toeplitz_kernel(H, tol);
  report.holds =
      subspace_relations(apply_composition(toeplitz_kernel(F, tol), psi, tol), target, tol)
          .included;

  RatFun pr = psi.to_ratfun(tol);
  ToeplitzSymbol zOverPsi(RatFun::constant(1.0), reciprocal(pr, tol), 1, tol);
  ToeplitzSymbol expr = symbol_mul(
      symbol_mul(H, symbol_compose(symbol_reciprocal(F, tol), psi, tol), tol), zOverPsi, tol);
  report.viaSmirnov = smirnov_conj_member(expr.realize(tol), tol);

  MaximalityCertificate cert = canonical_maximal_vector(F, tol);
  report.viaMaximalVector = membership(rat_compose(cert.vector.value, pr, tol), target, tol);

  if (report.holds != report.viaSmirnov || report.holds != report.viaMaximalVector)
    fail(ErrorKind::InconsistencyDetected,
         "containment routes disagree: direct=" + std::to_string(report.holds) +
             " smirnov=" + std::to_string(report.viaSmirnov) +
             " maximal=" + std::to_string(report.viaMaximalVector));
  return report;
}

TransportedVector transport_maximal_vector(const H2Rational& k, const ToeplitzSymbol& g,
                                           const BlaschkeProduct& psi,
                                           const EquivalenceWitness& w, TransportVariant variant,
                                           const ToleranceConfig& tol) {
  if (variant == TransportVariant::psiOverZ && !psi.has_origin_zero())
    fail(ErrorKind::HypothesisViolated, "this transport needs the composer to vanish at 0");
  check_witness(w, tol);
  if (!is_maximal_vector(k, g, tol))
    fail(ErrorKind::HypothesisViolated, "transport needs a certified maximal vector");

  RatFun pr = psi.to_ratfun(tol);
  ToeplitzSymbol core = symbol_mul(
      minus_side(w.h_minus, tol),
      symbol_mul(symbol_compose(g, psi, tol), ToeplitzSymbol::analytic(w.h_plus, tol), tol), tol);
  RatFun moved = reciprocal(w.h_plus, tol) * rat_compose(k.value, pr, tol);

  ToeplitzSymbol target;
  switch (variant) {
    case TransportVariant::timesPsi:
      target = symbol_mul(ToeplitzSymbol::z_power(-1, tol), core, tol);
      moved = moved * pr;
      break;
    case TransportVariant::plain:
      target = symbol_mul(ToeplitzSymbol::z_power(-1, tol),
                          symbol_mul(ToeplitzSymbol::analytic(pr, tol), core, tol), tol);
      break;
    case TransportVariant::psiOverZ:
      target = core;
      moved = moved * pr / RatFun::variable();
      break;
  }

  auto cert = is_maximal_vector(inner_outer_factorize(moved, tol), target, tol);
  if (!cert)
    fail(ErrorKind::InconsistencyDetected, "transported vector failed its maximality certificate");
  return {cert->vector, target};
}

H2Rational crofoot_maximal_vector(const BlaschkeProduct& theta, Cx a,
                                  const ToleranceConfig& tol) {
  if (!theta.has_origin_zero())
    fail(ErrorKind::HypothesisViolated, "the shifted construction needs a zero at the origin");
  if (std::abs(a) >= 1.0 - tol.discMargin)
    fail(ErrorKind::ValidationError, "shift parameter must sit inside the disc");

  RatFun th = theta.to_ratfun(tol);
  RatFun one = RatFun::constant(1.0);
  RatFun beta = (th - RatFun::constant(a)) / (one - std::conj(a) * th);
  RatFun hplus = reciprocal(one + std::conj(a) * beta, tol);
  RatFun vec = hplus / (one - std::conj(a) * th) * th / RatFun::variable();

  H2Rational out = inner_outer_factorize(vec, tol);
  if (!is_maximal_vector(out, ToeplitzSymbol::conj_blaschke(theta, tol), tol))
    fail(ErrorKind::InconsistencyDetected, "shifted vector failed its maximality certificate");
  return out;
}

LcmFamilyReport lcm_minimal_kernel_family(const std::vector<BlaschkeProduct>& thetas,
                                          const BlaschkeProduct& psi, const OracleConfig& ocfg,
                                          const ToleranceConfig& tol) {
  if (thetas.empty()) fail(ErrorKind::ValidationError, "empty inner-function family");
  LcmFamilyReport report;
  report.theta = blaschke_lcm(thetas, tol);
  report.K = model_space(blaschke_times_z(blaschke_compose(report.theta, psi, tol), tol), tol);

  std::vector<RatFun> sumGens;
  for (const BlaschkeProduct& ti : thetas) {
    BlaschkeProduct zi = blaschke_times_z(blaschke_compose(ti, psi, tol), tol);
    Subspace part1 = model_space(zi, tol);
    sumGens.insert(sumGens.end(), part1.basis().begin(), part1.basis().end());

    BlaschkeProduct rest = blaschke_compose(blaschke_div(report.theta, ti, tol), psi, tol);
    Subspace part2 = multiply_subspace(zi.to_ratfun(tol), model_space(rest, tol), tol);

    bool ok = subspace_relations(part1, report.K, tol).included &&
              part1.dim() + part2.dim() == report.K.dim();
    if (!part2.is_zero())
      ok = ok && subspace_relations(part2, report.K, tol).included;

    if (ok && !part2.is_zero()) {
      std::vector<RatFun> both = part1.basis();
      both.insert(both.end(), part2.basis().begin(), part2.basis().end());
      Eigen::MatrixXcd gram = gram_matrix(both, ocfg, tol);
      for (int i = 0; ok && i < part1.dim(); ++i)
        for (int j = part1.dim(); ok && j < int(both.size()); ++j) {
          double cosine = std::abs(gram(i, j)) / std::sqrt(gram(i, i).real() * gram(j, j).real());
          ok = cosine < 1e-9;
        }
    }
    report.decompositionChecks.push_back(ok);
  }

  Subspace sum = make_subspace(sumGens, RankPolicy::reduce, tol);
  report.sumEquality = subspace_relations(sum, report.K, tol).equal;
  return report;
}

bool coburn_check(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  int straight = std::max(-winding_number(s, tol), 0);
  int flipped = std::max(-winding_number(symbol_conj(s, tol), tol), 0);
  return std::min(straight, flipped) == 0;
}

HittDecomposition hitt_decomposition(const Subspace& m, const OracleConfig& ocfg,
                                     const ToleranceConfig& tol) {
  NearInvarianceReport inv = is_nearly_sstar_invariant(m, tol);
  if (!inv.invariant)
    fail(ErrorKind::NotNearlyInvariant, "the space is not nearly backward-shift invariant");

  const int n = m.dim();
  Eigen::VectorXcd values(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    values[i] = value_at_origin(m.basis()[size_t(i)], tol);
    scale = std::max(scale, std::abs(values[i]));
  }
  if (scale <= 1e-12) fail(ErrorKind::AllVanishAtOrigin, "every element vanishes at the origin");

  // reproducing element at the origin: <f, k0> = f(0) on the space, so k0 is
  // orthogonal to everything vanishing at 0 and k0(0) = |k0|^2 > 0
  Eigen::MatrixXcd gram = gram_matrix(m.basis(), ocfg, tol);
  Eigen::VectorXcd c = gram.ldlt().solve(values).conjugate();
  Cx k0At0 = 0.0;
  for (int i = 0; i < n; ++i) k0At0 += c[i] * values[i];
  if (!(k0At0.real() > 0.0) || std::abs(k0At0.imag()) > 1e-9 * k0At0.real())
    fail(ErrorKind::InconsistencyDetected, "origin-reproducing element has a defective norm");
  double norm = std::sqrt(k0At0.real());

  Eigen::VectorXcd numCoeffs = m.coefficients() * (c / norm);
  std::vector<Cx> coeffs(numCoeffs.data(), numCoeffs.data() + numCoeffs.size());
  RatFun u(Poly(std::move(coeffs), tol), m.common_denominator(), tol);

  HittDecomposition out;
  out.u = inner_outer_factorize(u, tol);
  bool insideClass = true;
  for (const RatFun& f : m.basis()) {
    out.kBasis.push_back(f / u);
    for (Cx r : out.kBasis.back().den_roots().locations)
      if (std::abs(r) < 1.0 + tol.discMargin) insideClass = false;
  }

  if (!insideClass) {
    out.isometryDefect = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  std::vector<RatFun> lifted;
  for (const RatFun& kf : out.kBasis) lifted.push_back(u * kf);
  Eigen::MatrixXcd g1 = gram_matrix(lifted, ocfg, tol);
  Eigen::MatrixXcd g2 = gram_matrix(out.kBasis, ocfg, tol);
  out.isometryDefect = (g1 - g2).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace tklab
