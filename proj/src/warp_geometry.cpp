#include "diraclab/warp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "diraclab/error.hpp"

namespace diraclab {

WarpingProfile WarpingProfile::exponential(int m, double t) {
  if (m < 2) throw InvalidProfileError("exponential profile needs m >= 2, got " + std::to_string(m));
  if (!(t > 0.0)) throw InvalidProfileError("profile domain length must be positive");
  WarpingProfile p;
  p.kind_ = ProfileKind::exponential;
  p.m_ = m;
  p.t_ = t;
  return p;
}

WarpingProfile WarpingProfile::constant(double c, double t) {
  if (!(c > 0.0)) throw InvalidProfileError("constant profile needs c > 0");
  if (!(t > 0.0)) throw InvalidProfileError("profile domain length must be positive");
  WarpingProfile p;
  p.kind_ = ProfileKind::constant;
  p.c_ = c;
  p.t_ = t;
  return p;
}

WarpingProfile WarpingProfile::sampled(std::vector<double> knots, std::vector<double> values, int order,
                                       double t) {
  if (!(t > 0.0)) throw InvalidProfileError("profile domain length must be positive");
  if (order != 1 && order != 3) throw InvalidProfileError("interpolation order must be 1 or 3");
  if (knots.size() != values.size() || knots.size() < 2)
    throw InvalidProfileError("sampled profile needs at least two (u, rho) pairs");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw InvalidProfileError("sampled profile knots must be strictly increasing");
  constexpr double kSlack = 1e-12;
  if (knots.front() > kSlack || knots.back() < t - kSlack * std::max(1.0, t))
    throw InvalidProfileError("sampled profile knots must span [0, t]");
  for (double v : values)
    if (!(v > 0.0)) throw InvalidProfileError("sampled profile has a non-positive rho sample");

  WarpingProfile p;
  p.kind_ = ProfileKind::sampled;
  p.t_ = t;
  p.order_ = order;
  p.knots_ = std::move(knots);
  p.values_ = std::move(values);
  p.build_spline();

  // The interpolant may dip between positive samples.
  for (std::size_t i = 0; i + 1 < p.knots_.size(); ++i)
    for (int s = 1; s < 16; ++s) {
      const double u = p.knots_[i] + (p.knots_[i + 1] - p.knots_[i]) * s / 16.0;
      if (!(p.rho(u) > 0.0)) throw InvalidProfileError("sampled profile interpolant is not positive");
    }
  return p;
}

void WarpingProfile::build_spline() {
  const std::size_t n = knots_.size();
  poly_.assign(n - 1, {0.0, 0.0, 0.0, 0.0});
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = knots_[i + 1] - knots_[i];

  if (order_ == 1) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      poly_[i] = {values_[i], (values_[i + 1] - values_[i]) / h[i], 0.0, 0.0};
    return;
  }

  // Natural spline second derivatives by the Thomas algorithm.
  std::vector<double> M(n, 0.0);
  if (n > 2) {
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 1;
      diag[j] = 2.0 * (h[i - 1] + h[i]);
      upper[j] = h[i];
      rhs[j] = 6.0 * ((values_[i + 1] - values_[i]) / h[i] - (values_[i] - values_[i - 1]) / h[i - 1]);
    }
    for (std::size_t j = 1; j < k; ++j) {
      const double w = h[j] / diag[j - 1];
      diag[j] -= w * upper[j - 1];
      rhs[j] -= w * rhs[j - 1];
    }
    M[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) M[j + 1] = (rhs[j] - upper[j] * M[j + 2]) / diag[j];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double b = (values_[i + 1] - values_[i]) / h[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
    poly_[i] = {values_[i], b, M[i] / 2.0, (M[i + 1] - M[i]) / (6.0 * h[i])};
  }
}

int WarpingProfile::smoothness() const {
  return kind_ == ProfileKind::sampled ? order_ : Jet::kOrder;
}

Jet WarpingProfile::rho(const Jet& u) const {
  switch (kind_) {
    case ProfileKind::exponential:
      return exp(u * (-1.0 / (2.0 * (m_ - 1))));
    case ProfileKind::constant:
      return Jet(c_);
    case ProfileKind::sampled: {
      const double x = u.value();
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
      std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
      i = std::min(i, knots_.size() - 2);
      const Jet dx = u - Jet(knots_[i]);
      const auto& c = poly_[i];
      return ((Jet(c[3]) * dx + Jet(c[2])) * dx + Jet(c[1])) * dx + Jet(c[0]);
    }
  }
  return Jet(1.0);
}

WarpingProfile WarpingProfile::with_domain_length(double t) const {
  switch (kind_) {
    case ProfileKind::exponential:
      return exponential(m_, t);
    case ProfileKind::constant:
      return constant(c_, t);
    case ProfileKind::sampled:
      return sampled(knots_, values_, order_, t);
  }
  return *this;
}

double MeanCurvature::H(double u) const {
  return -log(profile_.rho(Jet::variable(u))).derivative(1);
}

double MeanCurvature::Hprime(double u) const {
  return -log(profile_.rho(Jet::variable(u))).derivative(2);
}

MeanCurvature mean_curvature(const WarpingProfile& profile) { return MeanCurvature(profile); }

Jet smooth_step(const Jet& x) {
  // Within 1e-3 of either end exp(-1/x) underflows to zero along with all of
  // its derivatives, and the jet recurrences would only produce 0 * inf.
  const double x0 = x.value();
  if (x0 <= 1e-3) return Jet(0.0);
  if (x0 >= 1.0 - 1e-3) return Jet(1.0);
  const Jet a = exp(-1.0 / x);
  const Jet b = exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

CutoffSet::CutoffSet(double t, bool unit_conformal_factor) : t_(t), unit_(unit_conformal_factor) {
  if (!(t > 0.0)) throw InputError("cutoff parameter t must be positive");
}

Jet CutoffSet::psi(const Jet& u) const { return smooth_step(u + 1.0); }

Jet CutoffSet::chi(const Jet& u) const { return smooth_step(u - t_); }

Jet CutoffSet::phi_inf(const Jet& u) const { return 1.0 - smooth_step(u + 1.0) + smooth_step(u - 1.0); }

Jet CutoffSet::phi_t(const Jet& u) const {
  if (unit_) return Jet(1.0);
  return 1.0 - (1.0 - std::exp(-t_)) * (1.0 - phi_inf(u));
}

double CylinderPiece::r(double u) const { return std::sqrt(section_coeff(Jet(u)).value()); }

const CylinderPiece& NeckMetricFamily::cylinder(std::string_view label) const {
  for (const auto& c : cylinders)
    if (c.label == label) return c;
  throw NotFoundError("no cylinder piece labelled '" + std::string(label) + "'");
}

const BlockPiece& NeckMetricFamily::block(std::string_view label) const {
  for (const auto& b : blocks)
    if (b.label == label) return b;
  throw NotFoundError("no block piece labelled '" + std::string(label) + "'");
}

NeckMetricFamily NeckMetricFamily::scaled(double c) const {
  if (!(c > 0.0)) throw InputError("metric scale must be positive");
  NeckMetricFamily out = *this;
  for (auto& piece : out.cylinders) {
    piece.du_coeff = [f = piece.du_coeff, c](const Jet& u) { return f(u) * c; };
    piece.section_coeff = [f = piece.section_coeff, c](const Jet& u) { return f(u) * c; };
  }
  for (auto& b : out.blocks) b.scale *= c;
  return out;
}

NeckFamilies build_neck_family(const WarpingProfile& profile, double t, const CutoffSet& cutoffs,
                               const NeckParameters& params) {
  if (!(t > 0.0)) throw InputError("neck length t must be positive");
  if (std::abs(cutoffs.t() - t) > 1e-12 * std::max(1.0, t))
    throw InputError("cutoff set was built for a different t");
  if (params.m < 2) throw InputError("manifold dimension m must be >= 2");
  if (!(params.cross_section_volume > 0.0)) throw InputError("cross-section volume must be positive");

  auto rho = std::make_shared<const WarpingProfile>(profile);
  auto cut = std::make_shared<const CutoffSet>(cutoffs);
  const double rho0sq = std::pow(rho->rho(0.0), 2);
  const double rhotsq = std::pow(rho->rho(t), 2);
  const int smooth = profile.smoothness();

  NeckFamilies out;
  auto init = [&](NeckMetricFamily& f, std::string name, double core_scale) {
    f.name = std::move(name);
    f.m = params.m;
    f.t = t;
    f.cross_section_volume = params.cross_section_volume;
    f.blocks = {{"complement", params.complement_volume, params.complement_norm_sq, 1.0},
                {"core", params.core_volume, params.core_norm_sq, core_scale}};
  };

  // g^t on M^t.
  NeckMetricFamily& g = out.g;
  init(g, "g^t", params.core_scale_g.value_or(std::pow(rho->rho(t + 1.0), 2)));
  const MetricComponent unit = [](const Jet&) { return Jet(1.0); };
  g.cylinders.push_back({"U1", -1.0, 0.0, unit,
                         [cut, rho0sq](const Jet& u) {
                           const Jet s = cut->psi(u);
                           return (1.0 - s) + s * rho0sq;
                         },
                         smooth});
  g.cylinders.push_back({"Z", 0.0, t, unit,
                         [rho](const Jet& u) {
                           const Jet r = rho->rho(u);
                           return r * r;
                         },
                         smooth});
  g.cylinders.push_back({"U2", t, t + 1.0, unit,
                         [cut, rho, rhotsq](const Jet& u) {
                           const Jet c = cut->chi(u);
                           const Jet r = rho->rho(u);
                           return (1.0 - c) * (r * r) + c * rhotsq;
                         },
                         smooth});

  // h^t on M^1: phi_t times the pullback of g^t under the map that is the
  // identity on U1, scales Z^1 -> Z^t by t and translates U^{2,1} -> U^{2,t}.
  NeckMetricFamily& h = out.h;
  init(h, "h^t", params.core_scale_h.value_or(std::pow(rho->rho(2.0), 2)));
  const MetricComponent phi = [cut](const Jet& v) { return cut->phi_t(v); };
  h.cylinders.push_back({"U1", -1.0, 0.0, phi,
                         [cut, rho0sq](const Jet& v) {
                           const Jet s = cut->psi(v);
                           return cut->phi_t(v) * ((1.0 - s) + s * rho0sq);
                         },
                         smooth});
  h.cylinders.push_back({"Z", 0.0, 1.0, [cut, t](const Jet& v) { return cut->phi_t(v) * (t * t); },
                         [cut, rho, t](const Jet& v) {
                           const Jet r = rho->rho(v * t);
                           return cut->phi_t(v) * (r * r);
                         },
                         smooth});
  h.cylinders.push_back({"U2", 1.0, 2.0, phi,
                         [cut, rho, rhotsq, t](const Jet& v) {
                           const Jet w = v + (t - 1.0);
                           const Jet c = cut->chi(w);
                           const Jet r = rho->rho(w);
                           return cut->phi_t(v) * ((1.0 - c) * (r * r) + c * rhotsq);
                         },
                         smooth});
  return out;
}

CylinderPiece pullback_cylinder(const WarpingProfile& profile, double t) {
  if (!(t > 0.0)) throw InputError("pullback scale t must be positive");
  auto rho = std::make_shared<const WarpingProfile>(profile);
  return {"Z1-pullback", 0.0, 1.0, [t](const Jet&) { return Jet(t * t); },
          [rho, t](const Jet& v) {
            const Jet r = rho->rho(v * t);
            return r * r;
          },
          profile.smoothness()};
}

CylinderPiece flat_cylinder(double length) {
  if (!(length > 0.0)) throw InputError("cylinder length must be positive");
  const MetricComponent unit = [](const Jet&) { return Jet(1.0); };
  return {"flat", 0.0, length, unit, unit, Jet::kOrder};
}

NeckMetricFamily single_cylinder_family(CylinderPiece piece, int m, double cross_section_volume) {
  NeckMetricFamily f;
  f.name = "cylinder";
  f.m = m;
  f.t = piece.u_end - piece.u_begin;
  f.cross_section_volume = cross_section_volume;
  f.cylinders.push_back(std::move(piece));
  return f;
}

double interface_mismatch(const NeckMetricFamily& family) {
  std::vector<const CylinderPiece*> pieces;
  for (const auto& c : family.cylinders) pieces.push_back(&c);
  std::sort(pieces.begin(), pieces.end(), [](auto* a, auto* b) { return a->u_begin < b->u_begin; });
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const auto& left = *pieces[i];
    const auto& right = *pieces[i + 1];
    if (std::abs(left.u_end - right.u_begin) > 1e-12 * std::max(1.0, std::abs(left.u_end))) continue;
    worst = std::max(worst, std::abs(left.r(left.u_end) - right.r(right.u_begin)));
  }
  return worst;
}

QuadratureResult piece_volume(const CylinderPiece& piece, int m, double cross_section_volume, int panels) {
  auto density = [&](double u) {
    const Jet x(u);
    return std::sqrt(piece.du_coeff(x).value()) * std::pow(piece.section_coeff(x).value(), 0.5 * (m - 1));
  };
  QuadratureResult q = simpson(density, piece.u_begin, piece.u_end, panels);
  q.value *= cross_section_volume;
  q.error_estimate *= cross_section_volume;
  return q;
}

QuadratureResult family_volume(const NeckMetricFamily& family, int panels) {
  QuadratureResult total;
  for (const auto& c : family.cylinders) {
    const auto q = piece_volume(c, family.m, family.cross_section_volume, panels);
    total.value += q.value;
    total.error_estimate += q.error_estimate;
  }
  for (const auto& b : family.blocks) total.value += std::pow(b.scale, 0.5 * family.m) * b.volume;
  return total;
}

NeckMetricFamily normalized(const NeckMetricFamily& family, int panels) {
  const double vol = family_volume(family, panels).value;
  return family.scaled(std::pow(vol, -2.0 / family.m));
}

QuadratureResult sobolev_hk_norm_sq(const CylinderPiece& piece, int m, double cross_section_volume, int k,
                                    int panels) {
  if (k < 0) throw InputError("Sobolev order k must be >= 0");
  if (k > piece.smoothness || k > Jet::kOrder)
    throw ResolutionError("piece '" + piece.label + "' resolves derivatives up to order " +
                          std::to_string(std::min(piece.smoothness, Jet::kOrder)) + ", H^" +
                          std::to_string(k) + " requested");
  auto integrand = [&](double u) {
    const Jet x = Jet::variable(u);
    const Jet a = piece.du_coeff(x);
    const Jet b = piece.section_coeff(x);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
      const double da = a.derivative(j);
      const double db = b.derivative(j);
      s += da * da + (m - 1) * db * db;
    }
    return s;
  };
  QuadratureResult q = simpson(integrand, piece.u_begin, piece.u_end, panels);
  q.value *= cross_section_volume;
  q.error_estimate *= cross_section_volume;
  return q;
}

QuadratureResult sobolev_hk_norm_sq(const NeckMetricFamily& family, int k, bool include_blocks, int panels) {
  QuadratureResult total;
  for (const auto& c : family.cylinders) {
    const auto q = sobolev_hk_norm_sq(c, family.m, family.cross_section_volume, k, panels);
    total.value += q.value;
    total.error_estimate += q.error_estimate;
  }
  if (include_blocks)
    for (const auto& b : family.blocks) total.value += b.scale * b.scale * b.norm_sq;
  return total;
}

}  // namespace diraclab
