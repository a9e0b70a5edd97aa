#include "tklab/ratfun.hpp"

#include <cmath>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

bool is_exact_zero(Cx z) { return z.real() == 0.0 && z.imag() == 0.0; }

// append without the proximity merging that RootMultiset::add performs;
// entries from distinct factorizations must keep their own locations
void push_entry(RootMultiset& rs, Cx z, int mult) {
  rs.locations.push_back(z);
  rs.multiplicities.push_back(mult);
}

RootMultiset merged(const RootMultiset& a, const RootMultiset& b, double tol) {
  return roots_union_add(a, b, tol);
}

}  // namespace

RatFun RatFun::from_factors(const RootMultiset& numRoots, Cx numLead,
                            const RootMultiset& denRoots, Cx denLead,
                            const ToleranceConfig& tol) {
  if (is_exact_zero(denLead))
    fail(ErrorKind::DegenerateInput, "rational function with zero denominator");
  RatFun out;
  if (is_exact_zero(numLead)) return out;

  RootMultiset nr = numRoots;
  RootMultiset dr = denRoots;
  for (size_t i = 0; i < nr.locations.size(); ++i) {
    int j = dr.find(nr.locations[i], tol.rootMatchTol);
    if (j >= 0) {
      int c = std::min(nr.multiplicities[i], dr.multiplicities[size_t(j)]);
      nr.multiplicities[i] -= c;
      dr.multiplicities[size_t(j)] -= c;
    }
  }
  RootMultiset nk, dk;
  for (size_t i = 0; i < nr.locations.size(); ++i)
    if (nr.multiplicities[i] > 0) push_entry(nk, nr.locations[i], nr.multiplicities[i]);
  for (size_t i = 0; i < dr.locations.size(); ++i)
    if (dr.multiplicities[i] > 0) push_entry(dk, dr.locations[i], dr.multiplicities[i]);
  nk.sort_canonical();
  dk.sort_canonical();

  out.num_ = Poly::from_roots(nk.expanded(), numLead / denLead, tol);
  out.den_ = Poly::from_roots(dk.expanded(), Cx(1.0), tol);
  out.numRoots_ = std::move(nk);
  out.denRoots_ = std::move(dk);
  return out;
}

RatFun::RatFun(Poly num, Poly den, const ToleranceConfig& tol) {
  if (den.is_zero()) fail(ErrorKind::DegenerateInput, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1.0, tol);
    return;
  }
  RootMultiset nr = num.degree() >= 1 ? poly_roots(num, tol) : RootMultiset{};
  RootMultiset dr = den.degree() >= 1 ? poly_roots(den, tol) : RootMultiset{};
  *this = from_factors(nr, num.lead(), dr, den.lead(), tol);
}

RatFun RatFun::constant(Cx c, const ToleranceConfig& tol) {
  return RatFun(Poly::constant(c, tol), Poly::constant(1.0, tol), tol);
}

RatFun RatFun::variable() { return RatFun(Poly::variable(), Poly::constant(1.0)); }

Cx RatFun::eval(Cx z, const ToleranceConfig& tol) const {
  Cx dv = den_.eval(z);
  double scale = den_.l1_at(std::abs(z));
  if (std::abs(dv) < tol.evalPoleTol * std::max(scale, 1e-300))
    fail(ErrorKind::PoleEvaluation, "evaluation at a pole");
  return num_.eval(z) / dv;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  ToleranceConfig tol;
  return RatFun::from_factors(merged(a.numRoots_, b.numRoots_, tol.rootMatchTol),
                              a.num_.lead() * b.num_.lead(),
                              merged(a.denRoots_, b.denRoots_, tol.rootMatchTol), Cx(1.0), tol);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) fail(ErrorKind::DegenerateInput, "division by the zero function");
  if (a.is_zero()) return RatFun();
  ToleranceConfig tol;
  return RatFun::from_factors(merged(a.numRoots_, b.denRoots_, tol.rootMatchTol), a.num_.lead(),
                              merged(a.denRoots_, b.numRoots_, tol.rootMatchTol), b.num_.lead(),
                              tol);
}

RatFun operator*(Cx s, const RatFun& a) {
  if (s.real() == 0.0 && s.imag() == 0.0) return RatFun();
  RatFun out = a;
  out.num_ = s * out.num_;
  return out;
}

RatFun rat_compose(const RatFun& f, const RatFun& g, const ToleranceConfig& tol) {
  // f(g) = sum a_i g^i / sum b_i g^i, cleared to one power of den(g)^d
  const Poly& gn = g.num();
  const Poly& gd = g.den();
  int d = std::max(f.num().degree(), f.den().degree());
  if (d < 0) return RatFun();
  std::vector<Poly> gn_pow(size_t(d) + 1), gd_pow(size_t(d) + 1);
  gn_pow[0] = Poly::constant(1.0, tol);
  gd_pow[0] = Poly::constant(1.0, tol);
  for (int i = 1; i <= d; ++i) {
    gn_pow[size_t(i)] = gn_pow[size_t(i - 1)] * gn;
    gd_pow[size_t(i)] = gd_pow[size_t(i - 1)] * gd;
  }
  Poly num, den;
  for (int i = 0; i <= d; ++i) {
    Poly basis = gn_pow[size_t(i)] * gd_pow[size_t(d - i)];
    if (i <= f.num().degree()) num = num + f.num().coeff(i) * basis;
    if (i <= f.den().degree()) den = den + f.den().coeff(i) * basis;
  }
  return RatFun(std::move(num), std::move(den), tol);
}

RatFun conj_reflect(const RatFun& f, const ToleranceConfig& tol) {
  if (f.is_zero()) return RatFun();
  const int m = f.num().degree();
  const int n = f.den().degree();
  // L prod (z - r_i) / prod (z - s_j) reflects to
  // conj(L) z^{n-m} prod (1 - conj(r_i) z) / prod (1 - conj(s_j) z);
  // each nonzero root lands at reflect_root of itself, origin roots become
  // the power of z, and the linear factors' leads fold into the constant
  RootMultiset nr, dr;
  Cx lead = std::conj(f.num().lead());
  for (size_t i = 0; i < f.num_roots().locations.size(); ++i) {
    Cx r = f.num_roots().locations[i];
    int k = f.num_roots().multiplicities[i];
    if (is_exact_zero(r)) continue;
    push_entry(nr, reflect_root(r), k);
    for (int q = 0; q < k; ++q) lead *= -std::conj(r);
  }
  for (size_t i = 0; i < f.den_roots().locations.size(); ++i) {
    Cx s = f.den_roots().locations[i];
    int k = f.den_roots().multiplicities[i];
    if (is_exact_zero(s)) continue;
    push_entry(dr, reflect_root(s), k);
    for (int q = 0; q < k; ++q) lead /= -std::conj(s);
  }
  if (n > m)
    push_entry(nr, Cx(0.0), n - m);
  else if (m > n)
    push_entry(dr, Cx(0.0), m - n);
  return RatFun::from_factors(nr, lead, dr, Cx(1.0), tol);
}

RatFun reciprocal(const RatFun& f, const ToleranceConfig& tol) {
  if (f.is_zero()) fail(ErrorKind::DegenerateInput, "reciprocal of the zero function");
  return RatFun::from_factors(f.den_roots(), Cx(1.0), f.num_roots(), f.num().lead(), tol);
}

std::vector<Cx> unit_circle_points(int n) {
  std::vector<Cx> pts(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * M_PI * double(j) / double(n);
    pts[static_cast<size_t>(j)] = Cx(std::cos(t), std::sin(t));
  }
  return pts;
}

double circle_distance(const RatFun& f, const RatFun& g, int n, const ToleranceConfig& tol) {
  double worst = 0.0;
  for (Cx z : unit_circle_points(n)) {
    Cx fv = f.eval(z, tol);
    Cx gv = g.eval(z, tol);
    worst = std::max(worst, std::abs(fv - gv) / (1.0 + std::abs(fv)));
  }
  return worst;
}

}  // namespace tklab
