#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tklab/subspace.hpp"
#include "tklab/symbol.hpp"

namespace tklab {

// Independent numeric engine: everything here works on truncated Taylor /
// Fourier data and never feeds back into the exact computations — it only
// confirms or refutes them.

struct NumericSubspace {
  Eigen::MatrixXcd columns;  // truncation rows; orthonormal columns
  int truncation = 0;

  int dim() const { return int(columns.cols()); }
};

struct FourierTable {
  std::vector<Cx> coeffs;  // index k lives at position k + order
  int order = 0;           // table covers -order .. order
  bool truncationWarning = false;

  Cx at(int k) const {
    return (k >= -order && k <= order) ? coeffs[size_t(k + order)] : Cx(0.0);
  }
};

// Taylor coefficients c_0..c_{n-1} of a function analytic across the closed
// disc, by the division recurrence against the denominator.
std::vector<Cx> taylor_coefficients(const RatFun& f, int n, const ToleranceConfig& tol = {});

// Circle samples + FFT.  A slow geometric tail (|c_{±N}| >= tailWarnTol * max)
// sets truncationWarning instead of erroring.
FourierTable fourier_coefficients(const ToeplitzSymbol& s, const OracleConfig& cfg = {},
                                  const ToleranceConfig& tol = {});

// SVD null space of the N x N section [c_{i-j}].  Kept singular values must
// be separated from the rejected ones by gapRatio, else GapFailure — an
// ambiguous rank decision is never silently accepted.
NumericSubspace truncated_kernel(const ToeplitzSymbol& s, const OracleConfig& cfg = {},
                                 const ToleranceConfig& tol = {});

// Taylor expansion of each basis element, orthonormalized.
NumericSubspace taylor_embed(const Subspace& m, const OracleConfig& cfg = {},
                             const ToleranceConfig& tol = {});

// arccos of the singular values of A^H B, clipped to [0, pi/2], ascending.
std::vector<double> principal_angles(const NumericSubspace& a, const NumericSubspace& b);

// Largest principal angle, asserting the two spaces are comparable:
// DimensionMismatch when their dimensions differ.
double subspace_angle_checked(const NumericSubspace& a, const NumericSubspace& b);

// <f, g> computed twice (Taylor dot product and circle quadrature); the two
// routes must agree to quadratureTol or QuadratureMismatch is raised.  The
// Taylor value is returned.
Cx h2_inner_product(const RatFun& f, const RatFun& g, const OracleConfig& cfg = {},
                    const ToleranceConfig& tol = {});

// Gram matrix of a family under h2_inner_product: entry (i, j) = <f_i, f_j>.
Eigen::MatrixXcd gram_matrix(const std::vector<RatFun>& fs, const OracleConfig& cfg = {},
                             const ToleranceConfig& tol = {});

}  // namespace tklab
