// The stationary singular part of the low-energy wave operator on R^3 and its
// companions: a smooth low-energy cutoff, the induced convolution kernel K0
// computed by three independent routes (direct, integrated by parts, and with
// the frequency-zero mass subtracted), the radial/sector application of the
// singular blocks, rank-one boundary corrections, and L^p dilation probes
// that decide bounded-versus-growing behavior experimentally.
//
// The module also carries the small zoo of dimension-dependent constants
// attached to the kernel superpositions (closed forms for odd m, one-
// dimensional integrals for even m, and exact rational telescoping sums),
// plus a structured description of the singular expansion of the inverse
// Birman-Schwinger operator by dimension and threshold kind.
#ifndef THRESHSCATTER_WAVEOP_HPP
#define THRESHSCATTER_WAVEOP_HPP

#include <functional>
#include <string>
#include <vector>

#include "threshscatter/filon.hpp"
#include "threshscatter/grid.hpp"
#include "threshscatter/numeric.hpp"
#include "threshscatter/threshold.hpp"

namespace ts {

/// Smooth low-energy cutoff: identically 1 on [0, lambda0/2], identically 0
/// beyond lambda0, with a C^3 degree-7 polynomial step in between.
struct CutoffSpec {
  double lambda0 = 0.5;
  double value(double lam) const;
  double derivative(double lam) const;
};

enum class K0Route {
  direct,      //!< (1/2pi) int e^{i lam rho} F G dlam
  parts,       //!< (i/2pi rho) int e^{i lam rho} (F G)' dlam
  subtracted,  //!< mass term plus the (i rho F + F') transform of M itself
};

/// The cutoff kernel K0 for a pairing-slot profile w and input u:
///   M = spherical mean of conj(w) * u-check,
///   G(lam) = int_R e^{-i lam r} r M(r) dr,
///   K0(rho) = (1/2pi) int_0^{lambda0} e^{i lam rho} F(lam) G(lam) dlam,
/// sampled on a radius grid together with the prefix integrals of K0 and
/// w^2 K0 that the radial application of the singular blocks consumes.
class CutoffKernel {
 public:
  // 2400 lambda nodes keep the subtracted route (whose integrand does not
  // vanish at lambda = 0) within 1e-8 of the direct route in absolute terms;
  // 600 nodes leave a flat ~1.5e-8 interpolation floor.
  CutoffKernel(const RadialProfile& w, const RadialProfile& u,
               const CutoffSpec& cutoff = {}, K0Route route = K0Route::direct,
               double rho_max = 0.0, int lambda_nodes = 2400);

  complex value(double rho) const;    //!< K0(rho) by the selected route
  complex prefix0(double rho) const;  //!< int_0^rho K0
  complex prefix2(double rho) const;  //!< int_0^rho w^2 K0(w) dw
  /// (1/pi) int_R M dr; equals <|D|^{-1} w, u> and feeds the boundary checks.
  complex mass() const { return mass_; }
  const RadialProfile& mean() const { return M_; }
  double rho_max() const { return rho_max_; }

 private:
  CutoffSpec cutoff_;
  K0Route route_;
  RadialProfile M_;
  complex mass_{0.0, 0.0};
  // Piecewise-cubic models of the lambda-integrands, built per route.
  PiecewiseCubic fg_, dfg_, fh_, dfh_;
  double rho_max_ = 0.0;
  CubicSpline J0_, J2_;
  complex direct_value(double rho) const;
};

/// (coef / 2pi) times the radial factor of [K0(|z|)/|z|] * (chi Y_ell),
/// evaluated on s_out.  Sectors ell = 0 and ell = 1 are supported; the
/// chord-variable reduction consumes only the prefix integrals of K0.
RadialProfile apply_singular_block(const RadialProfile& chi, complex coef,
                                   const CutoffKernel& kernel,
                                   const std::vector<double>& s_out);

/// Resonance-type singular operator: Z u = (a i / 2pi) [K0/|.|] * (V phi_c)
/// with the kernel built on the slot w = V phi_c, plus its rank-one boundary
/// correction a <psi, u> phi_c with psi = |D|^{-1}(V phi_c).
struct FirstKindOperator {
  RadialProfile V;
  RadialProfile phi_c;
  RadialProfile chi;  //!< V phi_c
  RadialProfile psi;  //!< |D|^{-1} (V phi_c)
  complex a{0.0, 0.0};
  CutoffSpec cutoff;

  RadialProfile apply(const RadialProfile& u) const;
  RadialProfile apply_corrected(const RadialProfile& u) const;
  complex boundary_value(const RadialProfile& u) const;      //!< (1/pi) int M
  complex boundary_reference(const RadialProfile& u) const;  //!< <psi, u>
};

FirstKindOperator make_first_kind_operator(const RadialProfile& V,
                                           const CanonicalResonance& canon,
                                           const CutoffSpec& cutoff = {});

/// Bound-state-type singular operator: the sum over bound directions of
/// (1/2pi i) [K0_j/|.|] * (V phi_j) with slots psi_j = |D|^{-1}(V phi_j),
/// plus the projection correction sum_j <phi_j, u> phi_j.  Inputs from a
/// different sector are annihilated exactly.
struct SecondKindOperator {
  RadialProfile V;
  std::vector<RadialProfile> phi;  //!< L^2-normalized bound directions
  std::vector<RadialProfile> chi;  //!< V phi_j
  std::vector<RadialProfile> psi;  //!< |D|^{-1} (V phi_j)
  CutoffSpec cutoff;

  RadialProfile apply(const RadialProfile& u) const;
  RadialProfile apply_corrected(const RadialProfile& u) const;
};

SecondKindOperator make_second_kind_operator(
    const RadialProfile& V, const std::vector<RadialProfile>& bound_states,
    const CutoffSpec& cutoff = {});

/// Coupling weight of the frequency-zero mixed block:
/// a_jk = (1/pi) <phi_j, V D_3 V phi_k>; for ell = 1 directions D_3 is
/// rank-one in the sector, so this reduces to a product of dipole moments.
complex second_kind_weight(const RadialProfile& V, const RadialProfile& phi_j,
                           const RadialProfile& phi_k);

/// Mixed block: the resonance-type engine run with output slot V phi_j,
/// pairing slot V phi_k and coefficient -pi a_jk.
RadialProfile apply_mixed_block(const RadialProfile& V,
                                const RadialProfile& phi_j,
                                const RadialProfile& phi_k,
                                const RadialProfile& u,
                                const CutoffSpec& cutoff = {});

// ---------------------------------------------------------------------------
// Dilation probes
// ---------------------------------------------------------------------------

/// u_t(x) = u(x/t) represented exactly by scaling the radius grid.
RadialProfile dilate_profile(const RadialProfile& u, double t);

std::vector<double> default_probe_scales();  // 1, 2, 4, ..., 64

struct DilationProbe {
  std::vector<double> scales;
  std::vector<RadialProfile> inputs;
  std::vector<RadialProfile> outputs;
};

DilationProbe run_dilation_probe(
    const std::function<RadialProfile(const RadialProfile&)>& op,
    const RadialProfile& u, const std::vector<double>& scales);

/// Operator-norm proxy ||B u_t||_p / ||u_t||_p per scale; "growing" means the
/// log-log slope over the top three scales exceeds the threshold.
struct ProbeResult {
  double p = 2.0;
  std::vector<double> ratios;
  double slope = 0.0;
  double spread = 0.0;  //!< max ratio / min ratio over all scales
  bool growing = false;
};

ProbeResult assess_probe(const DilationProbe& probe, double p,
                         double slope_threshold = 0.15);

// ---------------------------------------------------------------------------
// Dimension-dependent kernel constants
// ---------------------------------------------------------------------------

/// Total weight of the kernel superposition: for odd m the closed form
/// Gamma((m-2)/2) / (sqrt(pi) Gamma((m-1)/2)); for even m the one-dimensional
/// integral 2^m Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)) int_1^inf
/// (x^2+1)^{-(m-1)} dx.
double dm_constant(int m);

/// |numeric - closed form| for the even-m integral above, the closed form
/// being Gamma(m-3/2)/(4 Gamma(m-1)) (sqrt(pi) - sum_{j=1}^{m-2}
/// Gamma(j) 2^{-j+1} / Gamma(j+1/2)).
double shin_identity_residual(int m);

/// Split of the even-m weight by phase index j (sums to 1).
std::vector<double> dmj_constants(int m);

/// Exact rational telescoping sum for odd m: sum_{k=0}^{n} 2^{-(n+k)}
/// binom(n+k, k) with n = (m-3)/2; equals 1 for every odd m >= 3.
Rational tilde_dm_odd(int m);

// ---------------------------------------------------------------------------
// Singular expansion structure by dimension
// ---------------------------------------------------------------------------

struct SingularTerm {
  int power = 0;            //!< power of lambda carried by the term
  bool log_factor = false;  //!< multiplied by log lambda
  std::string form;         //!< "projector", "rank-one", "remainder", ...
  complex coefficient{0.0, 0.0};
  bool coefficient_known = false;
};

struct SingularExpansion {
  int m = 3;
  ThresholdKind kind = ThresholdKind::regular;
  bool absorbable = false;  //!< singular terms dominated by the remainder
  std::vector<SingularTerm> terms;
};

/// Structured description of the singular part of the inverse low-energy
/// Birman-Schwinger operator.  phi_norm scales the coefficients that depend
/// on the L^2 normalization of the threshold function.
SingularExpansion singular_expansion(int m, ThresholdKind kind,
                                     double phi_norm = 1.0);

}  // namespace ts

#endif  // THRESHSCATTER_WAVEOP_HPP
