#pragma once

#include <optional>
#include <vector>

#include "tklab/oracle.hpp"
#include "tklab/subspace.hpp"
#include "tklab/symbol.hpp"

namespace tklab {

// Kernel of the Toeplitz operator with the given symbol, through scalar
// Wiener-Hopf factorization: sigma_plus^{-1} * span{1, ..., z^{dim-1}} with
// dim = max(-kappa, 0).  Every basis element is post-checked by the
// annihilation test (sigma * f has only negative Fourier modes).
Subspace toeplitz_kernel(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});

// H^2 (-) theta H^2 with basis {z^j / q_theta}.
Subspace model_space(const BlaschkeProduct& theta, const ToleranceConfig& tol = {});

struct MinimalKernel {
  ToeplitzSymbol symbol;
  Subspace kernel;
};

// Smallest Toeplitz kernel containing h: the kernel of the symbol with
// conjugate part z * inner(h) * outer(h) and analytic part 1/outer(h).
MinimalKernel minimal_kernel_of_vector(const H2Rational& h, const ToleranceConfig& tol = {});

struct MaximalityCertificate {
  H2Rational vector;
  ToeplitzSymbol symbol;
  OuterRational outerWitness;  // p with vector = symbol^{-1} conj(z) conj(p)
};

// Certifies k as a maximal vector of the kernel: recovers p from the circle
// identity and accepts iff p is outer with no poles in the closed disc.
// NotInKernel when k fails membership; nullopt when p has inner structure.
std::optional<MaximalityCertificate> is_maximal_vector(const H2Rational& k,
                                                       const ToeplitzSymbol& s,
                                                       const ToleranceConfig& tol = {});

// The canonical maximal vector z^{dim-1} / sigma_plus of a nontrivial kernel,
// certified before being returned.  TrivialKernel when dim = 0.
MaximalityCertificate canonical_maximal_vector(const ToeplitzSymbol& s,
                                               const ToleranceConfig& tol = {});

// Symbol (F o psi) * psi / z, whose kernel is the minimal Toeplitz kernel
// containing the composed kernel; equality holds exactly for automorphisms.
ToeplitzSymbol minimal_kernel_of_composed(const ToeplitzSymbol& F, const BlaschkeProduct& psi,
                                          const ToleranceConfig& tol = {});

// Smallest model space K_v containing the composition image of K_theta:
// v = theta o psi                when theta(0) != 0, psi(0) = 0
// v = z * (theta o psi)          when theta(0) != 0, psi(0) != 0
// v = z * (theta o psi) / psi    when theta(0) = 0   (exact Blaschke division)
BlaschkeProduct minimal_model_containing_composition(const BlaschkeProduct& theta,
                                                     const BlaschkeProduct& psi,
                                                     const ToleranceConfig& tol = {});

// All inner divisors of v of degree deg v - 1 (one zero dropped at a time);
// the minimality half of every model-space theorem enumerates these.
std::vector<BlaschkeProduct> maximal_proper_divisors(const BlaschkeProduct& v,
                                                     const ToleranceConfig& tol = {});

// Symbol g * conj(u) / u_o for the minimal kernel containing u * Ker T_g.
ToeplitzSymbol minimal_kernel_of_multiplied(const H2Rational& u, const ToeplitzSymbol& g,
                                            const ToleranceConfig& tol = {});

// Symbol F / u with the exact equality u * Ker T_F = Ker T_{F/u}; requires u
// outer and invertible across the closed disc (HypothesisViolated otherwise).
ToeplitzSymbol multiplied_kernel_exact(const H2Rational& u, const ToeplitzSymbol& F,
                                       const ToleranceConfig& tol = {});

// Symbol psi * (F o psi) * (conj(u) o psi) / (z * (u_o o psi)): the minimal
// kernel containing the composition image of u * Ker T_F.
ToeplitzSymbol minimal_kernel_pre_multiplied_composed(const H2Rational& u,
                                                      const ToeplitzSymbol& F,
                                                      const BlaschkeProduct& psi,
                                                      const ToleranceConfig& tol = {});

// Symbol psi * (F o psi) * conj(u) / (z * u_o): the minimal kernel containing
// u * (composition image of Ker T_F).
ToeplitzSymbol minimal_kernel_post_multiplied_composed(const H2Rational& u,
                                                       const ToeplitzSymbol& F,
                                                       const BlaschkeProduct& psi,
                                                       const ToleranceConfig& tol = {});

// Smallest model space containing the image of u * K_theta under composition:
// eta = z (theta o psi)(u o psi) / psi   when theta(0) = 0 or u(0) = 0
// eta = (theta o psi)(u o psi)           when theta(0), u(0) != 0, psi(0) = 0
// eta = z (theta o psi)(u o psi)         otherwise
BlaschkeProduct minimal_model_weighted_pre(const BlaschkeProduct& u,
                                           const BlaschkeProduct& theta,
                                           const BlaschkeProduct& psi,
                                           const ToleranceConfig& tol = {});

// Smallest model space containing u * (image of K_theta):
// eta = z (theta o psi) u / psi   when theta(0) = 0
// eta = (theta o psi) u           when theta(0) != 0, psi(0) = 0
// eta = z (theta o psi) u         otherwise
BlaschkeProduct minimal_model_weighted_post(const BlaschkeProduct& u,
                                            const BlaschkeProduct& theta,
                                            const BlaschkeProduct& psi,
                                            const ToleranceConfig& tol = {});

struct MappingReport {
  bool holds = false;             // direct subspace containment
  bool viaSmirnov = false;        // H (F^{-1} o psi) z / psi conjugate-Smirnov
  bool viaMaximalVector = false;  // composed maximal vector lands in Ker T_H
};

// Three independent routes decide whether composition carries Ker T_F into
// Ker T_H; any disagreement raises InconsistencyDetected.
MappingReport composition_maps_into(const ToeplitzSymbol& F, const BlaschkeProduct& psi,
                                    const ToeplitzSymbol& H, const ToleranceConfig& tol = {});

enum class TransportVariant { timesPsi, plain, psiOverZ };

struct TransportedVector {
  H2Rational vector;
  ToeplitzSymbol symbol;
};

// Carries a certified maximal vector k of Ker T_g through composition, with
// an invertible-factor witness (h_minus, h_plus) shaping the target symbol:
//   timesPsi: h_plus^{-1}(k o psi) psi      for conj(z) h_minus (g o psi) h_plus
//   plain:    h_plus^{-1}(k o psi)          for conj(z) psi h_minus (g o psi) h_plus
//   psiOverZ: h_plus^{-1}(k o psi) psi / z  for h_minus (g o psi) h_plus,
//             requiring psi(0) = 0
// The returned pair is re-certified before being handed back.
TransportedVector transport_maximal_vector(const H2Rational& k, const ToeplitzSymbol& g,
                                           const BlaschkeProduct& psi,
                                           const EquivalenceWitness& w, TransportVariant variant,
                                           const ToleranceConfig& tol = {});

// Maximal vector h_plus / (1 - conj(a) theta) * theta / z of K_theta obtained
// from the shifted product (theta - a)/(1 - conj(a) theta); needs theta(0) = 0.
H2Rational crofoot_maximal_vector(const BlaschkeProduct& theta, Cx a,
                                  const ToleranceConfig& tol = {});

struct LcmFamilyReport {
  Subspace K;             // model space of z * (lcm o psi)
  BlaschkeProduct theta;  // the least common multiple
  bool sumEquality = false;
  std::vector<bool> decompositionChecks;  // per input: orthogonal splitting holds
};

// K_{z(theta o psi)} as the closed sum of the K_{z(theta_i o psi)}, plus the
// per-factor orthogonal decomposition, verified by dimension additivity and
// oracle Gram orthogonality.
LcmFamilyReport lcm_minimal_kernel_family(const std::vector<BlaschkeProduct>& thetas,
                                          const BlaschkeProduct& psi,
                                          const OracleConfig& ocfg = {},
                                          const ToleranceConfig& tol = {});

// min(dim Ker T_sigma, dim Ker T_conj(sigma)) = 0, computed honestly from
// both winding numbers.
bool coburn_check(const ToeplitzSymbol& s, const ToleranceConfig& tol = {});

struct HittDecomposition {
  H2Rational u;                // unit norm, orthogonal to {f : f(0) = 0}, u(0) > 0
  std::vector<RatFun> kBasis;  // {f / u}; may leave H^2 where u has zeros
  double isometryDefect = 0.0;  // NaN when kBasis is not pole-free in the closed disc
};

// Near-invariant spaces factor as u * K; u is computed from the oracle Gram
// matrix as the normalized reproducing element at the origin.
HittDecomposition hitt_decomposition(const Subspace& m, const OracleConfig& ocfg = {},
                                     const ToleranceConfig& tol = {});

}  // namespace tklab
