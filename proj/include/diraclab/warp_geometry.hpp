#pragma once

// Warped cylinders [0,t] x N with metric du^2 + rho(u)^2 dsigma^2, the
// neck-stretching metric families built from them, and their volume and
// Sobolev functionals.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diraclab/jet.hpp"
#include "diraclab/numerics.hpp"

namespace diraclab {

enum class ProfileKind { exponential, constant, sampled };

// Warping function rho on [0, t]. Values outside [0, t] are defined by the
// closed form (or the end polynomial of a sampled table), which the neck
// construction needs on its collars.
class WarpingProfile {
 public:
  // rho(u) = exp(-u / (2(m-1))), m >= 2.
  static WarpingProfile exponential(int m, double t);
  static WarpingProfile constant(double c, double t);
  // Interpolated table; order 1 (piecewise linear) or 3 (natural cubic spline).
  static WarpingProfile sampled(std::vector<double> knots, std::vector<double> values, int order, double t);

  ProfileKind kind() const { return kind_; }
  double domain_length() const { return t_; }
  int exponent_m() const { return m_; }
  double constant_value() const { return c_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  int interpolation_order() const { return order_; }

  // Highest derivative order represented faithfully.
  int smoothness() const;

  double rho(double u) const { return rho(Jet(u)).value(); }
  Jet rho(const Jet& u) const;

  // Same shape, new domain length (sampled tables must still span it).
  WarpingProfile with_domain_length(double t) const;

 private:
  WarpingProfile() = default;
  void build_spline();

  ProfileKind kind_ = ProfileKind::constant;
  double t_ = 1.0;
  int m_ = 0;
  double c_ = 1.0;
  std::vector<double> knots_;
  std::vector<double> values_;
  int order_ = 3;
  // Per-interval polynomial coefficients in (u - knot_i), ascending powers.
  std::vector<std::array<double, 4>> poly_;
};

// H = -rho'/rho and its derivative, evaluated through the profile's jets.
class MeanCurvature {
 public:
  explicit MeanCurvature(WarpingProfile profile) : profile_(std::move(profile)) {}
  double H(double u) const;
  double Hprime(double u) const;
  const WarpingProfile& profile() const { return profile_; }

 private:
  WarpingProfile profile_;
};

MeanCurvature mean_curvature(const WarpingProfile& profile);

// 0 for x <= 0, 1 for x >= 1, built from exp(-1/x); every derivative vanishes
// at both ends.
Jet smooth_step(const Jet& x);

// Cutoff functions of the neck construction for one value of t.
//   psi:     0 for u <= -1, 1 for u >= 0
//   chi:     0 for u <= t,  1 for u >= t+1
//   phi_inf: 1 for u <= -1 and u >= 2, 0 on [0, 1]
//   phi_t:   1 - (1 - e^{-t})(1 - phi_inf), equal to e^{-t} on [0, 1]
class CutoffSet {
 public:
  // `unit_conformal_factor` forces phi_t == 1 (test hook).
  explicit CutoffSet(double t, bool unit_conformal_factor = false);

  double t() const { return t_; }
  bool unit_conformal_factor() const { return unit_; }

  Jet psi(const Jet& u) const;
  Jet chi(const Jet& u) const;
  Jet phi_inf(const Jet& u) const;
  Jet phi_t(const Jet& u) const;

  double psi(double u) const { return psi(Jet(u)).value(); }
  double chi(double u) const { return chi(Jet(u)).value(); }
  double phi_inf(double u) const { return phi_inf(Jet(u)).value(); }
  double phi_t(double u) const { return phi_t(Jet(u)).value(); }

 private:
  double t_;
  bool unit_;
};

using MetricComponent = std::function<Jet(const Jet&)>;

// Cylinder metric A(u) du^2 + B(u) dsigma^2 on [u_begin, u_end], where
// dsigma^2 is the reference metric of the (m-1)-dimensional cross-section.
struct CylinderPiece {
  std::string label;
  double u_begin = 0.0;
  double u_end = 1.0;
  MetricComponent du_coeff;
  MetricComponent section_coeff;
  int smoothness = Jet::kOrder;

  double r(double u) const;
};

// Non-cylindrical part of the manifold, carried as user-supplied constants.
// Its metric is `scale` times the fixed block metric.
struct BlockPiece {
  std::string label;
  double volume = 1.0;
  double norm_sq = 1.0;
  double scale = 1.0;
};

struct NeckMetricFamily {
  std::string name;
  int m = 2;
  double t = 1.0;
  double cross_section_volume = 1.0;
  std::vector<CylinderPiece> cylinders;
  std::vector<BlockPiece> blocks;

  const CylinderPiece& cylinder(std::string_view label) const;
  const BlockPiece& block(std::string_view label) const;
  // Metric multiplied by c > 0.
  NeckMetricFamily scaled(double c) const;
};

// Inputs for the non-cylinder pieces and the cross-section.
struct NeckParameters {
  int m = 2;
  double cross_section_volume = 1.0;
  double complement_volume = 1.0;
  double complement_norm_sq = 1.0;
  double core_volume = 1.0;
  double core_norm_sq = 1.0;
  // Scale of the core block metric; defaults are rho(t+1)^2 for g^t and
  // rho(2)^2 for h^t.
  std::optional<double> core_scale_g;
  std::optional<double> core_scale_h;
};

struct NeckFamilies {
  NeckMetricFamily g;  // g^t on M^t: complement, U1, Z, U2, core
  NeckMetricFamily h;  // h^t on M^1: conformally rescaled pullback of g^t
};

NeckFamilies build_neck_family(const WarpingProfile& profile, double t, const CutoffSet& cutoffs,
                               const NeckParameters& params = {});

// Pullback of du^2 + rho^2 dsigma^2 on [0,t] by u = t v: t^2 dv^2 + rho(tv)^2 dsigma^2 on [0,1].
CylinderPiece pullback_cylinder(const WarpingProfile& profile, double t);
// du^2 + dsigma^2 on [0, length].
CylinderPiece flat_cylinder(double length);
NeckMetricFamily single_cylinder_family(CylinderPiece piece, int m, double cross_section_volume);

// Largest jump of r across adjacent cylinder pieces.
double interface_mismatch(const NeckMetricFamily& family);

QuadratureResult piece_volume(const CylinderPiece& piece, int m, double cross_section_volume,
                              int panels = kDefaultSimpsonPanels);
QuadratureResult family_volume(const NeckMetricFamily& family, int panels = kDefaultSimpsonPanels);

// Rescales so that the family has unit volume: lengths by Vol^{-1/m}, i.e.
// the metric by Vol^{-2/m}.
NeckMetricFamily normalized(const NeckMetricFamily& family, int panels = kDefaultSimpsonPanels);

// Squared H^k norm relative to the flat product cylinder du^2 + dsigma^2 in
// the frame {d/du, orthonormal cross-section frame}:
//   vol(sigma) * sum_{j<=k} int (A^(j))^2 + (m-1) (B^(j))^2 du.
QuadratureResult sobolev_hk_norm_sq(const CylinderPiece& piece, int m, double cross_section_volume, int k,
                                    int panels = kDefaultSimpsonPanels);
// Family norm: cylinder pieces plus block constants scaled by scale^2.
QuadratureResult sobolev_hk_norm_sq(const NeckMetricFamily& family, int k, bool include_blocks = true,
                                    int panels = kDefaultSimpsonPanels);

}  // namespace diraclab
