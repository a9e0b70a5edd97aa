#include "tklab/symbol.hpp"

#include <cmath>
#include <numbers>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

constexpr double kOriginTol = 1e-12;
constexpr double kPi = std::numbers::pi;

// multiset copy without the exact-origin entries; poly_roots reports origin
// roots as exact zeros, so equality comparison is the right test
RootMultiset strip_origin(const RootMultiset& rs, int& count) {
  RootMultiset out;
  count = 0;
  for (size_t i = 0; i < rs.locations.size(); ++i) {
    if (rs.locations[i].real() == 0.0 && rs.locations[i].imag() == 0.0) {
      count += rs.multiplicities[i];
    } else {
      out.locations.push_back(rs.locations[i]);
      out.multiplicities.push_back(rs.multiplicities[i]);
    }
  }
  return out;
}

// z^k (k >= 0 up) or z^-k as a RatFun built on exact origin roots
RatFun z_power_ratfun(int k, const ToleranceConfig& tol) {
  RootMultiset origin;
  origin.locations.push_back(Cx(0.0));
  origin.multiplicities.push_back(std::abs(k));
  if (k >= 0) return RatFun::from_factors(origin, Cx(1.0), RootMultiset{}, Cx(1.0), tol);
  return RatFun::from_factors(RootMultiset{}, Cx(1.0), origin, Cx(1.0), tol);
}

void check_margin(const RootMultiset& rs, const ToleranceConfig& tol, const char* side) {
  for (Cx r : rs.locations) {
    double m = std::abs(r);
    if (m > 1.0 - tol.discMargin && m < 1.0 + tol.discMargin)
      fail(ErrorKind::CircleSingularity, std::string(side) + " root inside the circle dead zone");
  }
}

int disc_count(const RootMultiset& rs, const ToleranceConfig& tol) {
  int n = 0;
  for (size_t i = 0; i < rs.locations.size(); ++i)
    if (std::abs(rs.locations[i]) <= 1.0 - tol.discMargin) n += rs.multiplicities[i];
  return n;
}

}  // namespace

ToeplitzSymbol::ToeplitzSymbol(RatFun anti, RatFun ana, int power, const ToleranceConfig& tol)
    : anti_(std::move(anti)), ana_(std::move(ana)), power_(power) {
  if (anti_.is_zero() || ana_.is_zero())
    fail(ErrorKind::DegenerateInput, "symbol with an identically zero factor");

  // fold origin zeros and poles of either side into the z power; the folding
  // works on the cached multisets so the surviving roots keep their values
  int s = 0, t = 0;
  RootMultiset anum = strip_origin(anti_.num_roots(), s);
  RootMultiset aden = strip_origin(anti_.den_roots(), t);
  if (s > 0 || t > 0) {
    anti_ = RatFun::from_factors(anum, anti_.num().lead(), aden, Cx(1.0), tol);
    power_ += t - s;  // conj(z)^k is z^{-k} on the circle
  }
  anum = strip_origin(ana_.num_roots(), s);
  aden = strip_origin(ana_.den_roots(), t);
  if (s > 0 || t > 0) {
    ana_ = RatFun::from_factors(anum, ana_.num().lead(), aden, Cx(1.0), tol);
    power_ += s - t;
  }

  anti_num_roots_ = anti_.num_roots();
  anti_den_roots_ = anti_.den_roots();
  ana_num_roots_ = ana_.num_roots();
  ana_den_roots_ = ana_.den_roots();
  check_margin(anti_num_roots_, tol, "anti numerator");
  check_margin(anti_den_roots_, tol, "anti denominator");
  check_margin(ana_num_roots_, tol, "ana numerator");
  check_margin(ana_den_roots_, tol, "ana denominator");
}

ToeplitzSymbol ToeplitzSymbol::z_power(int k, const ToleranceConfig& tol) {
  return ToeplitzSymbol(RatFun::constant(1.0, tol), RatFun::constant(1.0, tol), k, tol);
}

ToeplitzSymbol ToeplitzSymbol::conj_blaschke(const BlaschkeProduct& b, const ToleranceConfig& tol) {
  return ToeplitzSymbol(b.to_ratfun(tol), RatFun::constant(1.0, tol), 0, tol);
}

ToeplitzSymbol ToeplitzSymbol::analytic(RatFun b, const ToleranceConfig& tol) {
  return ToeplitzSymbol(RatFun::constant(1.0, tol), std::move(b), 0, tol);
}

ToeplitzSymbol ToeplitzSymbol::conjugate(RatFun a, const ToleranceConfig& tol) {
  return ToeplitzSymbol(std::move(a), RatFun::constant(1.0, tol), 0, tol);
}

Cx ToeplitzSymbol::eval_circle(Cx zeta) const {
  Cx v = std::conj(anti_.eval(zeta)) * ana_.eval(zeta);
  Cx zp(1.0);
  for (int i = 0; i < std::abs(power_); ++i) zp *= zeta;
  return power_ >= 0 ? v * zp : v / zp;
}

RatFun ToeplitzSymbol::realize(const ToleranceConfig& tol) const {
  RatFun r = conj_reflect(anti_, tol) * ana_;
  if (power_ != 0) r = r * z_power_ratfun(power_, tol);
  return r;
}

ToeplitzSymbol symbol_mul(const ToeplitzSymbol& a, const ToeplitzSymbol& b,
                          const ToleranceConfig& tol) {
  return ToeplitzSymbol(a.anti() * b.anti(), a.ana() * b.ana(), a.power() + b.power(), tol);
}

ToeplitzSymbol symbol_reciprocal(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  return ToeplitzSymbol(reciprocal(s.anti(), tol), reciprocal(s.ana(), tol), -s.power(), tol);
}

ToeplitzSymbol symbol_conj(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  return ToeplitzSymbol(s.ana(), s.anti(), -s.power(), tol);
}

ToeplitzSymbol symbol_compose(const ToeplitzSymbol& s, const BlaschkeProduct& psi,
                              const ToleranceConfig& tol) {
  RatFun psi_rat = psi.to_ratfun(tol);
  RatFun anti = rat_compose(s.anti(), psi_rat, tol);
  RatFun ana = rat_compose(s.ana(), psi_rat, tol);
  // z^k composes to psi^k; negative powers ride the conjugate side because
  // 1/psi = conj(psi) on the circle
  for (int i = 0; i < std::abs(s.power()); ++i) {
    if (s.power() > 0)
      ana = ana * psi_rat;
    else
      anti = anti * psi_rat;
  }
  return ToeplitzSymbol(std::move(anti), std::move(ana), 0, tol);
}

namespace {

// phase increment between two circle samples; bisects until each step turns
// by less than pi/2 so no step aliases past the branch cut
double phase_increment(const ToeplitzSymbol& s, double ta, double tb, Cx fa, Cx fb, int depth) {
  double d = std::arg(fb / fa);
  if (std::abs(d) < kPi / 2.0) return d;
  if (depth >= 24)
    fail(ErrorKind::CircleSingularity, "symbol phase varies too fast along the circle");
  double tm = 0.5 * (ta + tb);
  Cx fm = s.eval_circle(Cx(std::cos(tm), std::sin(tm)));
  if (std::abs(fm) < 1e-12)
    fail(ErrorKind::CircleSingularity, "symbol vanishes on the circle");
  return phase_increment(s, ta, tm, fa, fm, depth + 1) +
         phase_increment(s, tm, tb, fm, fb, depth + 1);
}

}  // namespace

int winding_number(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  int by_roots = s.power() +
                 (disc_count(s.ana_num_roots(), tol) - disc_count(s.ana_den_roots(), tol)) -
                 (disc_count(s.anti_num_roots(), tol) - disc_count(s.anti_den_roots(), tol));

  const int samples = 4096;
  std::vector<Cx> vals(samples);
  for (int j = 0; j < samples; ++j) {
    double t = 2.0 * kPi * double(j) / double(samples);
    vals[j] = s.eval_circle(Cx(std::cos(t), std::sin(t)));
    if (std::abs(vals[j]) < 1e-12)
      fail(ErrorKind::CircleSingularity, "symbol vanishes on the circle");
  }
  double total = 0.0;
  for (int j = 0; j < samples; ++j) {
    double ta = 2.0 * kPi * double(j) / double(samples);
    double tb = 2.0 * kPi * double(j + 1) / double(samples);
    total += phase_increment(s, ta, tb, vals[j], vals[(j + 1) % samples], 0);
  }
  double turns = total / (2.0 * kPi);
  int by_quadrature = int(std::lround(turns));
  if (std::abs(turns - double(by_quadrature)) > 1e-3)
    fail(ErrorKind::WindingMismatch, "argument-principle total is far from an integer");
  if (by_quadrature != by_roots)
    fail(ErrorKind::WindingMismatch, "root count and argument principle disagree");
  return by_roots;
}

WienerHopfFactorization wiener_hopf(const ToeplitzSymbol& s, const ToleranceConfig& tol) {
  int kappa = s.power();
  // factors accumulate as root multisets, so every root entering the minus or
  // plus part keeps the exact value cached on the symbol (or its reflection
  // through the shared reflect_root map) and cancels exactly downstream
  RootMultiset mnum, mden, pnum, pden;
  Cx mlead(1.0), plead(1.0);
  int mnumZ = 0, mdenZ = 0;

  auto push = [](RootMultiset& rs, Cx r, int k) {
    rs.locations.push_back(r);
    rs.multiplicities.push_back(k);
  };
  auto inside = [&](Cx r) { return std::abs(r) <= 1.0 - tol.discMargin; };

  // analytic numerator: for b inside, (z - b) = [(z - b)/z] * z with the
  // bracket minus-invertible; for b outside it is already plus-invertible
  const RootMultiset& bn = s.ana_num_roots();
  for (size_t i = 0; i < bn.locations.size(); ++i) {
    Cx r = bn.locations[i];
    int k = bn.multiplicities[i];
    if (inside(r)) {
      push(mnum, r, k);
      mdenZ += k;
      kappa += k;
    } else {
      push(pnum, r, k);
    }
  }
  const RootMultiset& bd = s.ana_den_roots();
  for (size_t i = 0; i < bd.locations.size(); ++i) {
    Cx r = bd.locations[i];
    int k = bd.multiplicities[i];
    if (inside(r)) {
      push(mden, r, k);
      mnumZ += k;
      kappa -= k;
    } else {
      push(pden, r, k);
    }
  }

  // conjugate side: conj(z - a) = -conj(a) (z - reflect(a)) / z on the circle
  const RootMultiset& an = s.anti_num_roots();
  for (size_t i = 0; i < an.locations.size(); ++i) {
    Cx r = an.locations[i];
    int k = an.multiplicities[i];
    if (std::abs(r) <= kOriginTol) {
      kappa -= k;
    } else if (inside(r)) {
      push(pnum, reflect_root(r), k);
      for (int q = 0; q < k; ++q) plead *= -std::conj(r);
      kappa -= k;
    } else {
      push(mnum, reflect_root(r), k);
      for (int q = 0; q < k; ++q) mlead *= -std::conj(r);
      mdenZ += k;
    }
  }
  const RootMultiset& ad = s.anti_den_roots();
  for (size_t i = 0; i < ad.locations.size(); ++i) {
    Cx r = ad.locations[i];
    int k = ad.multiplicities[i];
    if (std::abs(r) <= kOriginTol) {
      kappa += k;
    } else if (inside(r)) {
      push(pden, reflect_root(r), k);
      for (int q = 0; q < k; ++q) plead /= -std::conj(r);
      kappa += k;
    } else {
      push(mden, reflect_root(r), k);
      for (int q = 0; q < k; ++q) mlead /= -std::conj(r);
      mnumZ += k;
    }
  }

  // net z power of the minus part (z's from crossings cancel pairwise first)
  int netZ = mnumZ - mdenZ;
  if (netZ > 0)
    push(mnum, Cx(0.0), netZ);
  else if (netZ < 0)
    push(mden, Cx(0.0), -netZ);

  // the factor products are monic; fold the symbol's leading coefficients in
  // once (denominators are monic by the RatFun invariant)
  mlead *= std::conj(s.anti().num().lead() / s.anti().den().lead()) *
           (s.ana().num().lead() / s.ana().den().lead());

  WienerHopfFactorization wh{RatFun::from_factors(mnum, mlead, mden, Cx(1.0), tol), kappa,
                             RatFun::from_factors(pnum, plead, pden, Cx(1.0), tol)};

  if (wh.kappa != winding_number(s, tol))
    fail(ErrorKind::InconsistencyDetected, "factorization index disagrees with the winding number");
  for (Cx zeta : unit_circle_points(64)) {
    Cx zp(1.0);
    for (int i = 0; i < std::abs(wh.kappa); ++i) zp *= zeta;
    Cx lhs = wh.sigma_minus.eval(zeta, tol) * wh.sigma_plus.eval(zeta, tol);
    lhs = wh.kappa >= 0 ? lhs * zp : lhs / zp;
    Cx rhs = s.eval_circle(zeta);
    if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs)))
      fail(ErrorKind::InconsistencyDetected, "factorization does not reproduce the symbol");
  }
  return wh;
}

bool kernels_equal_symbolic(const ToeplitzSymbol& g, const ToeplitzSymbol& h,
                            const ToleranceConfig& tol) {
  int wg = winding_number(g, tol);
  int wh = winding_number(h, tol);
  if (wg >= 0 || wh >= 0) return wg >= 0 && wh >= 0;  // trivial kernels are all equal
  if (wg != wh) return false;
  ToeplitzSymbol ratio = symbol_mul(g, symbol_reciprocal(h, tol), tol);
  RatFun rr = conj_reflect(ratio.realize(tol), tol);
  for (const RootMultiset* rs : {&rr.num_roots(), &rr.den_roots()})
    for (Cx r : rs->locations)
      if (std::abs(r) <= 1.0 - tol.discMargin) return false;
  return true;
}

bool kernel_included_symbolic(const ToeplitzSymbol& g, const ToeplitzSymbol& h,
                              const ToleranceConfig& tol) {
  if (winding_number(g, tol) >= 0 || winding_number(h, tol) >= 0)
    fail(ErrorKind::TrivialKernel, "inclusion test needs both kernels nontrivial");
  ToeplitzSymbol ratio = symbol_mul(h, symbol_reciprocal(g, tol), tol);
  return smirnov_conj_member(ratio.realize(tol), tol);
}

std::optional<EquivalenceWitness> symbols_equivalent(const ToeplitzSymbol& g1,
                                                     const ToeplitzSymbol& g2,
                                                     const ToleranceConfig& tol) {
  ToeplitzSymbol ratio = symbol_mul(g1, symbol_reciprocal(g2, tol), tol);
  WienerHopfFactorization wh = wiener_hopf(ratio, tol);
  if (wh.kappa != 0) return std::nullopt;
  return EquivalenceWitness{wh.sigma_plus, wh.sigma_minus};
}

}  // namespace tklab
