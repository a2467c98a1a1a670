// Zero-energy analysis of -Delta + V on R^3 for real radial potentials,
// sector by sector: discrete null spaces of the Birman-Schwinger operator
// I + G_ell V at the spectral edge, their moment-based classification
// (resonance versus bound states, graded by how many moments of V phi
// vanish), the canonically normalized resonance data, the polynomial-kernel
// smoothing operators D_j, and Riesz potentials of radial profiles.
//
// The discretization lives on a log grid; singular values are measured after
// symmetrizing with the quadrature weight, and the null threshold is
// calibrated against a manufactured potential/eigenfunction pair evaluated on
// the same grid, so "numerically zero" adapts to the resolution in use.
#ifndef THRESHSCATTER_THRESHOLD_HPP
#define THRESHSCATTER_THRESHOLD_HPP

#include <functional>
#include <vector>

#include "threshscatter/grid.hpp"
#include "threshscatter/numeric.hpp"

namespace ts {

struct ThresholdOptions {
  GridSpec grid = default_grid_spec();
  int max_vectors = 4;           //!< cap on reported null directions
  double tol_factor = 5.0;       //!< null threshold / calibration residual
  double ambiguity_factor = 10.0;  //!< gray zone above tol raises an error
  double moment_rel_tol = 1e-6;  //!< relative floor for "nonzero" moments
};

/// Null-space data of the sector-ell Birman-Schwinger operator at zero
/// energy.  Null vectors are normalized to unit weighted-grid norm and
/// sign-fixed to be positive near the origin.
struct SectorNullSpace {
  int ell = 0;
  double tol = 0.0;
  double calibration_residual = 0.0;
  std::vector<double> smallest_singular_values;  // ascending, leading few
  std::vector<RadialProfile> vectors;
};

SectorNullSpace threshold_null_space(const RadialProfile& V, int ell,
                                     const ThresholdOptions& opts = {});

/// Residual || phi + G_ell (V phi) || / || phi || of the discrete
/// zero-energy equation in the weighted grid norm (sector from phi).
double threshold_residual(const RadialProfile& V, const RadialProfile& phi);

/// Low moments of V phi, with the absolute-integrand scales that calibrate
/// what "vanishing" means at this resolution.  The zeroth moment is carried
/// by ell = 0 vectors only, the dipole moment by ell = 1 vectors.
struct NullVectorMoments {
  double zeroth = 0.0;
  double zeroth_scale = 0.0;
  double dipole = 0.0;
  double dipole_scale = 0.0;
};

NullVectorMoments null_vector_moments(const RadialProfile& V,
                                      const RadialProfile& phi);

/// How many leading moments of V phi vanish: 0 means the zeroth moment is
/// nonzero (a resonance direction), 1 means zeroth vanishes but the dipole
/// does not, 2 means both vanish.
int moment_grade(const NullVectorMoments& mom, double rel_tol = 1e-6);

enum class ThresholdKind {
  regular,      //!< no null directions in the scanned sectors
  first_kind,   //!< resonance only
  second_kind,  //!< bound states only
  third_kind    //!< both a resonance and bound states
};

struct ThresholdClassification {
  ThresholdKind kind = ThresholdKind::regular;
  std::vector<SectorNullSpace> sectors;  // ell = 0 .. max_ell
  std::vector<std::vector<NullVectorMoments>> moments;  // parallel to sectors
};

ThresholdClassification classify_threshold(const RadialProfile& V,
                                           int max_ell = 1,
                                           const ThresholdOptions& opts = {});

/// Canonically normalized resonance data: psi is the resonance direction
/// scaled so that -(V psi, psi) = 1; phi_c adds the projection of
/// V D_2 V psi onto the bound-state directions; the transmission coefficient
/// is 4 pi i |<V, phi_c>|^{-2}.
struct CanonicalResonance {
  RadialProfile psi;
  RadialProfile phi_c;
  complex transmission;
  double tail_coefficient;  //!< alpha in psi ~ alpha / r
};

CanonicalResonance canonical_resonance(const RadialProfile& V,
                                       const SectorNullSpace& s_wave,
                                       double rel_tol = 1e-6);

/// (D_j u)(x) = (1 / (4 pi j!)) int |x-y|^{j-1} u(y) dy for radial u on R^3,
/// j = 0..3, through prefix and tail moments of u (the chord power splits
/// into finitely many separable terms).  Requires enough decay: the moment
/// int u s^{j+1} ds must converge on the grid.
RadialProfile dj_operator(const RadialProfile& u, int j);

/// Riesz potential |D|^{-s} u for radial u on R^3, 0 < s < 3; s = 1 is the
/// logarithmic-kernel case.  Near-diagonal panels use exact moments of the
/// singular factor against a local cubic, so the kernel singularity costs no
/// accuracy.
RadialProfile fractional_integral(const RadialProfile& u, double s);

/// Least-squares fit f ~ c1 / r + c2 / r^2 over [r_lo, r_hi] (defaults:
/// [0.1, 0.8] * rmax), on the real part.
struct TailFit {
  double inverse_r = 0.0;
  double inverse_r2 = 0.0;
  double residual = 0.0;  //!< rms misfit / rms value over the window
};

TailFit fit_power_tail(const RadialProfile& f, double r_lo = 0.0,
                       double r_hi = 0.0);

/// Potential/null-function pair built in reverse: phi = r^ell h with
/// h = (1+r^2)^{-(2ell+1)/2} inside blend_lo, an exact power tail
/// c r^{-(2ell+1)} outside blend_hi (where V vanishes identically), and a
/// C^2 quintic log-log blend in between; V = (Delta phi)/phi on the sector.
struct ManufacturedPair {
  RadialProfile V;
  RadialProfile phi;
  double tail_coefficient = 0.0;  //!< c in phi ~ c r^{-(ell+1)}
  int ell = 0;
};

ManufacturedPair manufacture_potential(int ell,
                                       const GridSpec& grid = default_grid_spec(),
                                       double blend_lo = 20.0,
                                       double blend_hi = 60.0);

}  // namespace ts

#endif  // THRESHSCATTER_THRESHOLD_HPP
