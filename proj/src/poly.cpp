#include "tklab/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

void trim_trailing(std::vector<Cx>& c, double leadingTol) {
  double scale = 0.0;
  for (const Cx& x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) {
    c.clear();
    return;
  }
  double cut = leadingTol * std::max(1.0, scale);
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}

bool lex_less(Cx a, Cx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// EISPACK-style balancing with radix-2 scaling; improves companion conditioning
void balance(Eigen::MatrixXcd& A) {
  const int n = int(A.rows());
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        r += std::abs(A(i, j));
        c += std::abs(A(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      double g = r / 2.0, f = 1.0, s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        A.row(i) *= 1.0 / f;
        A.col(i) *= f;
      }
    }
  }
}

std::vector<Cx> companion_eigenvalues(const std::vector<Cx>& monic) {
  // monic: coefficients of a monic polynomial, ascending, degree n = size - 1
  const int n = int(monic.size()) - 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) A(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) A(i, n - 1) = -monic[i];
  balance(A);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::InconsistencyDetected, "companion eigensolver did not converge");
  std::vector<Cx> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

}  // namespace

Poly::Poly(std::vector<Cx> coeffs, const ToleranceConfig& tol) : c_(std::move(coeffs)) {
  trim_trailing(c_, tol.leadingTol);
}

Poly Poly::constant(Cx c, const ToleranceConfig& tol) { return Poly({c}, tol); }

Poly Poly::variable() { return Poly({Cx(0.0), Cx(1.0)}); }

Poly Poly::from_roots(const std::vector<Cx>& roots, Cx lead, const ToleranceConfig& tol) {
  std::vector<Cx> c{lead};
  for (Cx r : roots) {
    c.push_back(Cx(0.0));
    for (int k = int(c.size()) - 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c), tol);
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const Cx& x : c_) m = std::max(m, std::abs(x));
  return m;
}

double Poly::l1_at(double r) const {
  double s = 0.0, p = 1.0;
  for (const Cx& x : c_) {
    s += std::abs(x) * p;
    p *= r;
  }
  return s;
}

Cx Poly::eval(Cx z) const {
  Cx v(0.0);
  for (int k = int(c_.size()) - 1; k >= 0; --k) v = v * z + c_[k];
  return v;
}

Poly Poly::derivative(const ToleranceConfig& tol) const {
  if (c_.size() <= 1) return Poly();
  std::vector<Cx> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
  return Poly(std::move(d), tol);
}

Poly Poly::conj_coeffs(const ToleranceConfig& tol) const {
  std::vector<Cx> d(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
  return Poly(std::move(d), tol);
}

Poly Poly::reversed(const ToleranceConfig& tol) const {
  std::vector<Cx> d(c_.rbegin(), c_.rend());
  return Poly(std::move(d), tol);
}

Poly Poly::shifted_up(int k, const ToleranceConfig& tol) const {
  if (is_zero() || k == 0) return k == 0 ? *this : Poly();
  std::vector<Cx> d(c_.size() + size_t(k), Cx(0.0));
  for (size_t i = 0; i < c_.size(); ++i) d[i + size_t(k)] = c_[i];
  return Poly(std::move(d), tol);
}

Poly Poly::shifted_down(int k, const ToleranceConfig& tol) const {
  if (k == 0) return *this;
  if (int(c_.size()) <= k) return Poly();
  double cut = tol.leadingTol * std::max(1.0, max_abs_coeff());
  for (int i = 0; i < k; ++i) {
    if (std::abs(c_[i]) > cut)
      fail(ErrorKind::DegenerateInput, "shifted_down would drop a nonzero coefficient");
  }
  std::vector<Cx> d(c_.begin() + k, c_.end());
  return Poly(std::move(d), tol);
}

int Poly::origin_multiplicity(const ToleranceConfig& tol) const {
  if (is_zero()) return 0;
  double cut = tol.leadingTol * std::max(1.0, max_abs_coeff());
  int m = 0;
  while (m < int(c_.size()) && std::abs(c_[m]) <= cut) ++m;
  return m;
}

Poly Poly::deflated(Cx r, const ToleranceConfig& tol) const {
  if (degree() < 1) return Poly();
  std::vector<Cx> q(c_.size() - 1);
  Cx carry = c_.back();
  for (int k = int(c_.size()) - 2; k >= 0; --k) {
    q[k] = carry;
    carry = c_[k] + r * carry;
  }
  return Poly(std::move(q), tol);
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Cx> c(std::max(a.c_.size(), b.c_.size()), Cx(0.0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Cx> c(std::max(a.c_.size(), b.c_.size()), Cx(0.0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Cx> c(a.c_.size() + b.c_.size() - 1, Cx(0.0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(Cx s, const Poly& a) {
  std::vector<Cx> c(a.c_);
  for (Cx& x : c) x *= s;
  return Poly(std::move(c));
}

int RootMultiset::total() const {
  int t = 0;
  for (int m : multiplicities) t += m;
  return t;
}

int RootMultiset::find(Cx z, double tol) const {
  for (size_t i = 0; i < locations.size(); ++i)
    if (std::abs(locations[i] - z) <= tol) return int(i);
  return -1;
}

void RootMultiset::add(Cx z, int mult, double tol) {
  int idx = find(z, tol);
  if (idx >= 0) {
    multiplicities[size_t(idx)] += mult;
  } else {
    locations.push_back(z);
    multiplicities.push_back(mult);
  }
}

void RootMultiset::sort_canonical() {
  std::vector<size_t> order(locations.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lex_less(locations[a], locations[b]); });
  std::vector<Cx> loc;
  std::vector<int> mul;
  loc.reserve(order.size());
  mul.reserve(order.size());
  for (size_t i : order) {
    loc.push_back(locations[i]);
    mul.push_back(multiplicities[i]);
  }
  locations.swap(loc);
  multiplicities.swap(mul);
}

std::vector<Cx> RootMultiset::expanded() const {
  std::vector<Cx> out;
  out.reserve(size_t(total()));
  for (size_t i = 0; i < locations.size(); ++i)
    for (int k = 0; k < multiplicities[i]; ++k) out.push_back(locations[i]);
  return out;
}

bool roots_contained(const RootMultiset& a, const RootMultiset& b, double tol) {
  for (size_t i = 0; i < a.locations.size(); ++i) {
    int idx = b.find(a.locations[i], tol);
    if (idx < 0 || b.multiplicities[size_t(idx)] < a.multiplicities[i]) return false;
  }
  return true;
}

RootMultiset roots_subtract(const RootMultiset& b, const RootMultiset& a, double tol) {
  RootMultiset out = b;
  for (size_t i = 0; i < a.locations.size(); ++i) {
    int idx = out.find(a.locations[i], tol);
    if (idx < 0 || out.multiplicities[size_t(idx)] < a.multiplicities[i])
      fail(ErrorKind::HypothesisViolated, "root multiset subtraction of a non-divisor");
    out.multiplicities[size_t(idx)] -= a.multiplicities[i];
  }
  RootMultiset trimmed;
  for (size_t i = 0; i < out.locations.size(); ++i)
    if (out.multiplicities[i] > 0) {
      trimmed.locations.push_back(out.locations[i]);
      trimmed.multiplicities.push_back(out.multiplicities[i]);
    }
  trimmed.sort_canonical();
  return trimmed;
}

RootMultiset roots_union_add(const RootMultiset& a, const RootMultiset& b, double tol) {
  RootMultiset out = a;
  for (size_t i = 0; i < b.locations.size(); ++i)
    out.add(b.locations[i], b.multiplicities[i], tol);
  out.sort_canonical();
  return out;
}

double root_residual(const Poly& p, Cx r) {
  double scale = p.l1_at(std::max(1.0, std::abs(r)));
  if (scale == 0.0) return 0.0;
  return std::abs(p.eval(r)) / scale;
}

namespace {

// Schroeder iteration r <- r - m p(r)/p'(r): quadratic for a root of
// multiplicity exactly m, harmless polishing when m = 1.  Near the noise
// floor the step length stagnates around eps/|p'| without shrinking further,
// so convergence is judged by the residual of the best iterate seen, not by
// the step criterion alone.
Cx refine_root(const Poly& p, const Poly& dp, Cx r0, int m, bool& ok) {
  Cx r = r0;
  Cx best = r0;
  double bestAbs = std::abs(p.eval(r0));
  for (int it = 0; it < 64; ++it) {
    Cx pv = p.eval(r);
    if (std::abs(pv) < bestAbs) {
      bestAbs = std::abs(pv);
      best = r;
    }
    Cx dv = dp.eval(r);
    if (std::abs(dv) == 0.0) break;
    Cx step = double(m) * pv / dv;
    r -= step;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(r) > 1e12) break;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) break;
  }
  if (std::isfinite(r.real()) && std::isfinite(r.imag()) && std::abs(r) <= 1e12 &&
      std::abs(p.eval(r)) < bestAbs)
    best = r;
  ok = root_residual(p, best) <= 1e-12;
  return best;
}

}  // namespace

RootMultiset poly_roots(const Poly& p, const ToleranceConfig& tol) {
  if (p.is_zero()) fail(ErrorKind::DegenerateInput, "poly_roots of the zero polynomial");
  RootMultiset out;
  if (p.degree() == 0) return out;

  // exact bookkeeping for roots at the origin
  int m0 = p.origin_multiplicity(tol);
  Poly q = p.shifted_down(m0, tol);
  if (m0 > 0) out.add(Cx(0.0), m0, tol.rootMatchTol);

  const int n = q.degree();
  std::vector<Cx> raw;
  if (n == 1) {
    raw.push_back(-q.coeff(0) / q.coeff(1));
  } else if (n == 2) {
    // stable quadratic: avoid cancellation in the -b +- sqrt(disc) pair
    Cx a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    Cx disc = std::sqrt(b * b - 4.0 * a * c);
    Cx u = (std::real(std::conj(b) * disc) >= 0.0) ? -b - disc : -b + disc;
    if (std::abs(u) == 0.0) {
      raw.push_back((-b - disc) / (2.0 * a));
      raw.push_back((-b + disc) / (2.0 * a));
    } else {
      raw.push_back(u / (2.0 * a));
      raw.push_back(2.0 * c / u);
    }
  } else if (n >= 3) {
    std::vector<Cx> monic(size_t(n) + 1);
    for (int k = 0; k <= n; ++k) monic[size_t(k)] = q.coeff(k) / q.lead();
    raw = companion_eigenvalues(monic);
  }

  if (!raw.empty()) {
    // coarse clustering: multiplicity-m eigenvalue clouds have radius about
    // eps^(1/m), far wider than rootMatchTol, so group generously first
    std::sort(raw.begin(), raw.end(), lex_less);
    std::vector<std::vector<Cx>> clusters;
    std::vector<bool> used(raw.size(), false);
    for (size_t i = 0; i < raw.size(); ++i) {
      if (used[i]) continue;
      std::vector<Cx> cl{raw[i]};
      used[i] = true;
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t j = 0; j < raw.size(); ++j) {
          if (used[j]) continue;
          for (Cx c : cl) {
            if (std::abs(raw[j] - c) <= 3e-4 * (1.0 + std::abs(c))) {
              cl.push_back(raw[j]);
              used[j] = true;
              grew = true;
              break;
            }
          }
        }
      }
      clusters.push_back(std::move(cl));
    }

    Poly dq = q.derivative(tol);
    for (const auto& cl : clusters) {
      Cx centroid(0.0);
      for (Cx c : cl) centroid += c;
      centroid /= double(cl.size());
      const int m = int(cl.size());
      bool ok = false;
      Cx refined = centroid;
      if (m == 1) {
        refined = refine_root(q, dq, centroid, 1, ok);
      } else {
        // An m-fold root is a simple root of the (m-1)th derivative, so Newton
        // converges there without the noise-floor stagnation that plagues
        // iteration on q itself.  Accept only if q and all m-1 derivatives
        // vanish at the result - that certifies the multiplicity analytically.
        std::vector<Poly> ders{q};
        for (int k = 1; k < m; ++k) ders.push_back(ders.back().derivative(tol));
        refined = refine_root(ders.back(), ders.back().derivative(tol), centroid, 1, ok);
        for (const Poly& pk : ders)
          ok = ok && root_residual(pk, refined) <= 1e-12;
      }
      if (ok) {
        out.add(refined, m, tol.rootMatchTol);
      } else {
        // fall back to the individual eigenvalues, polished as simple roots
        for (Cx c : cl) {
          bool sok = false;
          Cx r = refine_root(q, dq, c, 1, sok);
          out.add(sok ? r : c, 1, tol.rootMatchTol);
        }
      }
    }
  }

  out.sort_canonical();
  if (out.total() != p.degree())
    fail(ErrorKind::InconsistencyDetected, "root count does not match degree");
  for (size_t i = 0; i < out.locations.size(); ++i) {
    if (root_residual(p, out.locations[i]) > tol.rootResidualTol)
      fail(ErrorKind::InconsistencyDetected, "root residual above rootResidualTol");
  }
  return out;
}

}  // namespace tklab
