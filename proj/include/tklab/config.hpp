#pragma once

namespace tklab {

// Every cutoff the exact engine uses lives here and is passed explicitly, so a
// caller can tighten or loosen one knob without recompiling.
struct ToleranceConfig {
  double rootMatchTol = 1e-8;     // roots closer than this are treated as equal
  double rootResidualTol = 1e-8;  // relative residual bound each accepted root must meet
  double evalPoleTol = 1e-12;     // relative |den(z)| below this counts as hitting a pole
  double leadingTol = 1e-13;      // relative size below which trailing coefficients are trimmed
  double discMargin = 1e-3;       // dead zone around |z| = 1 where zeros/poles are rejected
  double rankTol = 1e-9;          // relative SVD threshold for rank and dimension decisions
  double membershipTol = 1e-8;    // relative residual bound for span membership
};

// Knobs for the numeric cross-check path (sampling, truncation, SVD gaps).
struct OracleConfig {
  int truncation = 256;      // Taylor / Toeplitz section order
  int fftSize = 4096;        // circle sample count, at least 4 * truncation
  double svdGapTol = 1e-6;   // singular values below svdGapTol * s_max belong to the kernel
  double gapRatio = 1e3;     // required ratio between smallest kept and largest rejected
  double angleTol = 1e-8;    // principal-angle agreement bound
  double quadratureTol = 1e-9;  // Taylor vs quadrature inner-product agreement
  double tailWarnTol = 1e-9;    // Fourier tail magnitude that flags under-truncation
};

}  // namespace tklab
