#include "tklab/blaschke.hpp"

#include <cmath>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

constexpr double kOriginTol = 1e-12;

void check_zero_location(Cx a, const ToleranceConfig& tol) {
  if (std::abs(a) > 1.0 - tol.discMargin)
    fail(ErrorKind::ValidationError, "Blaschke zero too close to or outside the circle");
}

}  // namespace

BlaschkeProduct BlaschkeProduct::from_zeros(std::vector<Cx> zs, Cx constant,
                                            const ToleranceConfig& tol) {
  BlaschkeProduct b;
  for (Cx a : zs) {
    check_zero_location(a, tol);
    b.zeros.add(a, 1, tol.rootMatchTol);
  }
  b.zeros.sort_canonical();
  double cm = std::abs(constant);
  if (std::abs(cm - 1.0) > 1e-9)
    fail(ErrorKind::ValidationError, "Blaschke constant is not unimodular");
  b.unimodular = constant / cm;
  return b;
}

bool BlaschkeProduct::has_origin_zero() const { return origin_multiplicity() > 0; }

int BlaschkeProduct::origin_multiplicity() const {
  for (size_t i = 0; i < zeros.locations.size(); ++i)
    if (std::abs(zeros.locations[i]) <= kOriginTol) return zeros.multiplicities[i];
  return 0;
}

Cx BlaschkeProduct::eval(Cx z) const {
  Cx v = unimodular;
  for (size_t i = 0; i < zeros.locations.size(); ++i) {
    Cx a = zeros.locations[i];
    Cx factor = (z - a) / (Cx(1.0) - std::conj(a) * z);
    for (int k = 0; k < zeros.multiplicities[i]; ++k) v *= factor;
  }
  return v;
}

Poly BlaschkeProduct::denominator(const ToleranceConfig& tol) const {
  Poly d = Poly::constant(1.0, tol);
  for (size_t i = 0; i < zeros.locations.size(); ++i) {
    Cx a = zeros.locations[i];
    if (std::abs(a) <= kOriginTol) continue;
    Poly factor({Cx(1.0), -std::conj(a)}, tol);
    for (int k = 0; k < zeros.multiplicities[i]; ++k) d = d * factor;
  }
  return d;
}

RatFun BlaschkeProduct::to_ratfun(const ToleranceConfig& tol) const {
  Poly num = unimodular * Poly::from_roots(zeros.expanded(), 1.0, tol);
  return RatFun(std::move(num), denominator(tol), tol);
}

BlaschkeProduct blaschke_mul(const BlaschkeProduct& a, const BlaschkeProduct& b,
                             const ToleranceConfig& tol) {
  BlaschkeProduct out;
  out.zeros = roots_union_add(a.zeros, b.zeros, tol.rootMatchTol);
  out.unimodular = a.unimodular * b.unimodular;
  return out;
}

BlaschkeProduct blaschke_div(const BlaschkeProduct& a, const BlaschkeProduct& b,
                             const ToleranceConfig& tol) {
  BlaschkeProduct out;
  out.zeros = roots_subtract(a.zeros, b.zeros, tol.rootMatchTol);
  out.unimodular = a.unimodular / b.unimodular;
  return out;
}

bool blaschke_divides(const BlaschkeProduct& a, const BlaschkeProduct& b,
                      const ToleranceConfig& tol) {
  return roots_contained(a.zeros, b.zeros, tol.rootMatchTol);
}

BlaschkeProduct blaschke_gcd(const std::vector<BlaschkeProduct>& bs, const ToleranceConfig& tol) {
  BlaschkeProduct out;
  if (bs.empty()) return out;
  const RootMultiset& first = bs[0].zeros;
  for (size_t i = 0; i < first.locations.size(); ++i) {
    int m = first.multiplicities[i];
    for (size_t k = 1; k < bs.size() && m > 0; ++k) {
      int j = bs[k].zeros.find(first.locations[i], tol.rootMatchTol);
      m = (j < 0) ? 0 : std::min(m, bs[k].zeros.multiplicities[size_t(j)]);
    }
    if (m > 0) out.zeros.add(first.locations[i], m, tol.rootMatchTol);
  }
  out.zeros.sort_canonical();
  return out;
}

BlaschkeProduct blaschke_lcm(const std::vector<BlaschkeProduct>& bs, const ToleranceConfig& tol) {
  BlaschkeProduct out;
  for (const BlaschkeProduct& b : bs) {
    for (size_t i = 0; i < b.zeros.locations.size(); ++i) {
      Cx loc = b.zeros.locations[i];
      int m = b.zeros.multiplicities[i];
      int j = out.zeros.find(loc, tol.rootMatchTol);
      if (j < 0)
        out.zeros.add(loc, m, tol.rootMatchTol);
      else if (out.zeros.multiplicities[size_t(j)] < m)
        out.zeros.multiplicities[size_t(j)] = m;
    }
  }
  out.zeros.sort_canonical();
  return out;
}

bool is_automorphism(const BlaschkeProduct& b) { return b.degree() == 1; }

BlaschkeProduct blaschke_times_z(const BlaschkeProduct& b, const ToleranceConfig& tol) {
  BlaschkeProduct out = b;
  out.zeros.add(Cx(0.0), 1, tol.rootMatchTol);
  out.zeros.sort_canonical();
  return out;
}

BlaschkeProduct blaschke_compose(const BlaschkeProduct& theta, const BlaschkeProduct& psi,
                                 const ToleranceConfig& tol) {
  BlaschkeProduct out;
  RatFun psi_rat = psi.to_ratfun(tol);
  for (size_t i = 0; i < theta.zeros.locations.size(); ++i) {
    Cx a = theta.zeros.locations[i];
    int m = theta.zeros.multiplicities[i];
    if (std::abs(a) <= kOriginTol) {
      // preimages of 0 are exactly psi's own zeros
      for (size_t j = 0; j < psi.zeros.locations.size(); ++j)
        out.zeros.add(psi.zeros.locations[j], m * psi.zeros.multiplicities[j], tol.rootMatchTol);
      continue;
    }
    Poly target = psi_rat.num() - a * psi_rat.den();
    if (target.degree() != psi.degree())
      fail(ErrorKind::InconsistencyDetected, "preimage polynomial degree drop");
    RootMultiset pre = poly_roots(target, tol);
    for (size_t j = 0; j < pre.locations.size(); ++j) {
      Cx r = pre.locations[j];
      if (std::abs(psi.eval(r) - a) > 1e-6)
        fail(ErrorKind::InconsistencyDetected, "preimage fails to map back to the target zero");
      check_zero_location(r, tol);
      out.zeros.add(r, m * pre.multiplicities[j], tol.rootMatchTol);
    }
  }
  out.zeros.sort_canonical();
  if (out.zeros.total() != theta.degree() * psi.degree())
    fail(ErrorKind::InconsistencyDetected, "composition degree mismatch");

  // recover the unimodular constant on the circle, away from zeros of either side
  BlaschkeProduct plain = out;
  plain.unimodular = Cx(1.0);
  for (double t : {0.73, 1.91, 3.07, 4.21, 5.39}) {
    Cx zeta(std::cos(t), std::sin(t));
    Cx denom = plain.eval(zeta);
    if (std::abs(denom) < 0.5) continue;  // |.| should be 1; guard numeric trouble
    Cx c = theta.eval(psi.eval(zeta)) / denom;
    if (std::abs(std::abs(c) - 1.0) > 1e-8)
      fail(ErrorKind::InconsistencyDetected, "composition constant is not unimodular");
    out.unimodular = c / std::abs(c);
    return out;
  }
  fail(ErrorKind::InconsistencyDetected, "no usable sample point for the composition constant");
}

OuterRational OuterRational::checked(RatFun v, const ToleranceConfig& tol) {
  if (v.is_zero()) fail(ErrorKind::DegenerateInput, "outer part of the zero function");
  for (const Poly* p : {&v.num(), &v.den()}) {
    if (p->degree() < 1) continue;
    RootMultiset rs = poly_roots(*p, tol);
    for (Cx r : rs.locations)
      if (std::abs(r) < 1.0 + tol.discMargin)
        fail(ErrorKind::ValidationError, "outer function with a root in the closed disc");
  }
  return OuterRational{std::move(v)};
}

H2Rational H2Rational::zero() {
  H2Rational h;
  h.value = RatFun();
  h.inner = BlaschkeProduct::one();
  h.outer = OuterRational{RatFun()};
  return h;
}

H2Rational inner_outer_factorize(const RatFun& f, const ToleranceConfig& tol) {
  if (f.is_zero()) fail(ErrorKind::DegenerateInput, "factorization of the zero function");
  if (f.den().degree() >= 1) {
    RootMultiset poles = poly_roots(f.den(), tol);
    for (Cx p : poles.locations)
      if (std::abs(p) < 1.0 + tol.discMargin)
        fail(ErrorKind::NotInH2, "pole inside or too near the closed disc");
  }
  RootMultiset inside;
  Poly reduced = f.num();
  if (f.num().degree() >= 1) {
    RootMultiset zs = poly_roots(f.num(), tol);
    for (size_t i = 0; i < zs.locations.size(); ++i) {
      double r = std::abs(zs.locations[i]);
      if (r <= 1.0 - tol.discMargin) {
        inside.add(zs.locations[i], zs.multiplicities[i], tol.rootMatchTol);
        for (int k = 0; k < zs.multiplicities[i]; ++k)
          reduced = reduced.deflated(zs.locations[i], tol);
      } else if (r < 1.0 + tol.discMargin) {
        fail(ErrorKind::CircleZero, "zero in the dead zone around the circle");
      }
    }
  }
  inside.sort_canonical();

  BlaschkeProduct plain;
  plain.zeros = inside;
  // outer candidate f / plain-Blaschke; reflected denominators cancel the zeros exactly
  RatFun outer_raw(reduced * plain.denominator(tol), f.den(), tol);
  Cx w = outer_raw.eval(Cx(0.0), tol);
  if (std::abs(w) == 0.0) fail(ErrorKind::InconsistencyDetected, "outer part vanishing at 0");
  Cx phase = w / std::abs(w);

  H2Rational out;
  out.value = f;
  out.inner = plain;
  out.inner.unimodular = phase;
  out.outer = OuterRational::checked((Cx(1.0) / phase) * outer_raw, tol);
  return out;
}

bool smirnov_conj_member(const RatFun& r, const ToleranceConfig& tol) {
  if (r.is_zero()) fail(ErrorKind::DegenerateInput, "Smirnov test on the zero function");
  RatFun refl = conj_reflect(r, tol);
  if (refl.den().degree() < 1) return true;
  RootMultiset poles = poly_roots(refl.den(), tol);
  for (Cx p : poles.locations)
    if (std::abs(p) <= 1.0 - tol.discMargin) return false;
  return true;
}

}  // namespace tklab
