#include "tklab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "tklab/errors.hpp"

namespace tklab {

namespace {

void check_config(const OracleConfig& cfg) {
  if (cfg.truncation < 64)
    fail(ErrorKind::ValidationError, "oracle truncation below the supported minimum of 64");
  if (cfg.fftSize < 4 * cfg.truncation)
    fail(ErrorKind::ValidationError, "fftSize must be at least 4 * truncation");
  if ((cfg.fftSize & (cfg.fftSize - 1)) != 0)
    fail(ErrorKind::ValidationError, "fftSize must be a power of two");
}

std::vector<Cx> circle_grid(int m) {
  std::vector<Cx> pts(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    double t = 2.0 * std::numbers::pi * double(j) / double(m);
    pts[size_t(j)] = Cx(std::cos(t), std::sin(t));
  }
  return pts;
}

}  // namespace

std::vector<Cx> taylor_coefficients(const RatFun& f, int n, const ToleranceConfig& tol) {
  std::vector<Cx> out(size_t(n), Cx(0.0));
  if (f.is_zero()) return out;
  const Poly& num = f.num();
  const Poly& den = f.den();
  Cx d0 = den.coeff(0);
  if (std::abs(d0) <= tol.evalPoleTol * den.max_abs_coeff())
    fail(ErrorKind::NotInH2, "Taylor expansion at a function with a pole at the origin");
  for (int k = 0; k < n; ++k) {
    Cx acc = num.coeff(k);
    for (int j = 1; j <= std::min(k, den.degree()); ++j)
      acc -= den.coeff(j) * out[size_t(k - j)];
    out[size_t(k)] = acc / d0;
  }
  return out;
}

FourierTable fourier_coefficients(const ToeplitzSymbol& s, const OracleConfig& cfg,
                                  const ToleranceConfig&) {
  check_config(cfg);
  const int m = cfg.fftSize;
  std::vector<Cx> samples(static_cast<size_t>(m));
  std::vector<Cx> grid = circle_grid(m);
  for (int j = 0; j < m; ++j) samples[size_t(j)] = s.eval_circle(grid[size_t(j)]);

  std::vector<Cx> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, samples);

  FourierTable table;
  table.order = cfg.truncation;
  table.coeffs.resize(size_t(2 * cfg.truncation + 1));
  double maxAbs = 0.0;
  for (int k = -cfg.truncation; k <= cfg.truncation; ++k) {
    int idx = k >= 0 ? k : m + k;
    Cx c = spectrum[size_t(idx)] / double(m);
    table.coeffs[size_t(k + cfg.truncation)] = c;
    maxAbs = std::max(maxAbs, std::abs(c));
  }
  double tail = std::max(std::abs(table.at(cfg.truncation)), std::abs(table.at(-cfg.truncation)));
  table.truncationWarning = tail >= cfg.tailWarnTol * maxAbs && maxAbs > 0.0;
  return table;
}

NumericSubspace truncated_kernel(const ToeplitzSymbol& s, const OracleConfig& cfg,
                                 const ToleranceConfig& tol) {
  // A square section would report a spurious kernel whenever the operator is
  // injective with positive winding (its adjoint's kernel leaks into the
  // small singular values, carried by vectors hugging the truncation edge).
  // Extra rows see those edge vectors land outside the column range and
  // push their singular values back above the gap.
  const int n = cfg.truncation;
  const int rows = n + n / 2;
  OracleConfig wide = cfg;
  wide.truncation = rows;
  while (wide.fftSize < 4 * rows) wide.fftSize *= 2;
  FourierTable c = fourier_coefficients(s, wide, tol);
  Eigen::MatrixXcd t(rows, n);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = c.at(i - j);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv[0];
  int kept = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] < cfg.svdGapTol * smax) ++kept;

  if (kept > 0 && kept < n) {
    double rejectedFloor = sv[sv.size() - kept - 1];  // smallest kept-out value
    double keptCeiling = sv[sv.size() - kept];        // largest kernel value
    if (keptCeiling > 0.0 && rejectedFloor / keptCeiling < cfg.gapRatio)
      fail(ErrorKind::GapFailure, "singular values do not separate the kernel cleanly");
    if (keptCeiling == 0.0 && rejectedFloor <= 0.0)
      fail(ErrorKind::GapFailure, "degenerate singular spectrum");
  }

  NumericSubspace out;
  out.truncation = n;
  out.columns = svd.matrixV().rightCols(kept);
  return out;
}

NumericSubspace taylor_embed(const Subspace& m, const OracleConfig& cfg,
                             const ToleranceConfig& tol) {
  check_config(cfg);
  const int n = cfg.truncation;
  NumericSubspace out;
  out.truncation = n;
  if (m.is_zero()) {
    out.columns = Eigen::MatrixXcd::Zero(n, 0);
    return out;
  }
  Eigen::MatrixXcd a(n, m.dim());
  for (int j = 0; j < m.dim(); ++j) {
    std::vector<Cx> tc = taylor_coefficients(m.basis()[size_t(j)], n, tol);
    for (int i = 0; i < n; ++i) a(i, j) = tc[size_t(i)];
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  out.columns = qr.householderQ() * Eigen::MatrixXcd::Identity(n, m.dim());
  return out;
}

std::vector<double> principal_angles(const NumericSubspace& a, const NumericSubspace& b) {
  if (a.truncation != b.truncation)
    fail(ErrorKind::ValidationError, "principal angles need matching truncations");
  if (a.dim() == 0 || b.dim() == 0) return {};
  Eigen::MatrixXcd cross = a.columns.adjoint() * b.columns;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cross);
  const auto& sv = svd.singularValues();

  // acos of a cosine near 1 loses half the working precision, so angles below
  // 45 degrees are recomputed from the sine: the singular values of the
  // residual B - A (A^H B) are exactly sin(theta_k) for orthonormal A, B
  Eigen::JacobiSVD<Eigen::MatrixXcd> ssvd(b.columns - a.columns * cross);
  std::vector<double> sines(ssvd.singularValues().data(),
                            ssvd.singularValues().data() + ssvd.singularValues().size());
  std::sort(sines.begin(), sines.end());  // ascending: pairs with cosines descending

  const double half = std::sqrt(0.5);
  std::vector<double> angles(size_t(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double c = std::clamp(sv[i], 0.0, 1.0);  // sv is descending in i
    double s = (size_t(i) < sines.size()) ? std::clamp(sines[size_t(i)], 0.0, 1.0) : 1.0;
    angles[size_t(i)] = (c >= half) ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double subspace_angle_checked(const NumericSubspace& a, const NumericSubspace& b) {
  if (a.dim() != b.dim())
    fail(ErrorKind::DimensionMismatch, "subspace dimensions differ: " + std::to_string(a.dim()) +
                                           " vs " + std::to_string(b.dim()));
  if (a.dim() == 0) return 0.0;
  return principal_angles(a, b).back();
}

Cx h2_inner_product(const RatFun& f, const RatFun& g, const OracleConfig& cfg,
                    const ToleranceConfig& tol) {
  check_config(cfg);
  std::vector<Cx> fc = taylor_coefficients(f, cfg.truncation, tol);
  std::vector<Cx> gc = taylor_coefficients(g, cfg.truncation, tol);
  Cx byTaylor = 0.0;
  for (int k = 0; k < cfg.truncation; ++k) byTaylor += fc[size_t(k)] * std::conj(gc[size_t(k)]);

  Cx byQuadrature = 0.0;
  for (Cx zeta : circle_grid(cfg.fftSize)) byQuadrature += f.eval(zeta, tol) * std::conj(g.eval(zeta, tol));
  byQuadrature /= double(cfg.fftSize);

  if (std::abs(byTaylor - byQuadrature) > cfg.quadratureTol * std::max(1.0, std::abs(byTaylor)))
    fail(ErrorKind::QuadratureMismatch, "Taylor and quadrature inner products disagree");
  return byTaylor;
}

Eigen::MatrixXcd gram_matrix(const std::vector<RatFun>& fs, const OracleConfig& cfg,
                             const ToleranceConfig& tol) {
  Eigen::MatrixXcd g(fs.size(), fs.size());
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j) {
      if (j < i) {
        g(Eigen::Index(i), Eigen::Index(j)) = std::conj(g(Eigen::Index(j), Eigen::Index(i)));
        continue;
      }
      g(Eigen::Index(i), Eigen::Index(j)) = h2_inner_product(fs[i], fs[j], cfg, tol);
    }
  return g;
}

}  // namespace tklab
