#pragma once

// Figures of merit for a photon-pair source and the least-squares fits used to extract
// normalized rates (power scans) and the pump-polarization dependence.
// All quoted errors are 1-sigma, first-order Poisson propagation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fibspdc/error.hpp"

namespace fibspdc {

/// R_cc / sqrt(R1 R2).
inline double pair_efficiency(double r_cc, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw Error(Errc::NonPositiveSingles, "singles rates must be > 0", !(r1 > 0.0) ? "r1" : "r2");
  }
  if (!(r_cc >= 0.0)) throw Error(Errc::InvalidArgument, "coincidence rate must be >= 0", "r_cc");
  return r_cc / std::sqrt(r1 * r2);
}

struct CarEstimate {
  double value = 0.0;
  double error = 0.0;
  bool lower_bound = false;  // no accidentals observed; value assumes one
};

inline CarEstimate car(double coincidences, double accidentals) {
  if (!(accidentals > 0.0)) {
    throw Error(Errc::ZeroAccidentals, "no accidentals; CAR is only bounded from below",
                "accidentals");
  }
  if (!(coincidences >= 0.0)) {
    throw Error(Errc::InvalidArgument, "coincidences must be >= 0", "coincidences");
  }
  CarEstimate c;
  c.value = coincidences / accidentals;
  c.error = coincidences > 0.0
                ? c.value * std::sqrt(1.0 / coincidences + 1.0 / accidentals)
                : 1.0 / accidentals;
  return c;
}

/// car(), except zero accidentals yield the lower bound coincidences/1.
inline CarEstimate car_or_lower_bound(double coincidences, double accidentals) {
  if (accidentals > 0.0) return car(coincidences, accidentals);
  return {coincidences, 0.0, true};
}

struct DarkSubtracted {
  double rate = 0.0;
  bool clamped = false;
};

inline DarkSubtracted subtract_darks(double singles, double dark_rate) {
  const double r = singles - dark_rate;
  if (r < 0.0) return {0.0, true};
  return {r, false};
}

/// Raw counts from one acquisition.
struct CountSummary {
  std::uint64_t singles_1 = 0;
  std::uint64_t singles_2 = 0;
  std::uint64_t coincidences = 0;
  double accidentals = 0.0;
  std::int64_t duration_ps = 0;
  std::int64_t window_ps = 0;
};

struct PairMetrics {
  double singles_1 = 0.0, singles_1_error = 0.0;  // Hz, dark-subtracted
  double singles_2 = 0.0, singles_2_error = 0.0;
  double singles_1_raw = 0.0, singles_2_raw = 0.0;
  bool singles_clamped = false;
  double singles_geomean = 0.0, singles_geomean_error = 0.0;
  double coincidence_rate = 0.0, coincidence_rate_error = 0.0;
  double accidental_rate = 0.0, accidental_rate_error = 0.0;
  CarEstimate car;
  double pair_efficiency = 0.0, pair_efficiency_error = 0.0;  // dark-subtracted singles
  double pair_efficiency_raw = 0.0, pair_efficiency_raw_error = 0.0;
  std::int64_t window_ps = 0;
  std::int64_t duration_ps = 0;
};

inline PairMetrics pair_metrics(const CountSummary& counts, double dark1_hz = 0.0,
                                double dark2_hz = 0.0) {
  if (counts.duration_ps <= 0) {
    throw Error(Errc::InvalidArgument, "duration must be > 0", "duration_ps");
  }
  if (counts.singles_1 == 0 || counts.singles_2 == 0) {
    throw Error(Errc::NonPositiveSingles, "both detectors need at least one event",
                counts.singles_1 == 0 ? "singles_1" : "singles_2");
  }
  const double t = static_cast<double>(counts.duration_ps) * 1e-12;
  const double n1 = static_cast<double>(counts.singles_1);
  const double n2 = static_cast<double>(counts.singles_2);
  const double nc = static_cast<double>(counts.coincidences);
  const double na = counts.accidentals;

  PairMetrics m;
  m.window_ps = counts.window_ps;
  m.duration_ps = counts.duration_ps;
  m.singles_1_raw = n1 / t;
  m.singles_2_raw = n2 / t;
  const auto s1 = subtract_darks(m.singles_1_raw, dark1_hz);
  const auto s2 = subtract_darks(m.singles_2_raw, dark2_hz);
  m.singles_1 = s1.rate;
  m.singles_2 = s2.rate;
  m.singles_clamped = s1.clamped || s2.clamped;
  m.singles_1_error = std::sqrt(n1) / t;
  m.singles_2_error = std::sqrt(n2) / t;
  m.singles_geomean = std::sqrt(m.singles_1 * m.singles_2);
  if (m.singles_geomean > 0.0) {
    const double rel1 = m.singles_1_error / m.singles_1;
    const double rel2 = m.singles_2_error / m.singles_2;
    m.singles_geomean_error = 0.5 * m.singles_geomean * std::sqrt(rel1 * rel1 + rel2 * rel2);
  }
  m.coincidence_rate = nc / t;
  m.coincidence_rate_error = std::sqrt(nc) / t;
  m.accidental_rate = na / t;
  m.accidental_rate_error = std::sqrt(na) / t;
  m.car = car_or_lower_bound(nc, na);

  // eta = C / sqrt(N1 N2); relative variance 1/C + 1/(4 N1) + 1/(4 N2)
  const auto eta_error = [&](double eta, double a1, double a2) {
    if (nc > 0.0) return eta * std::sqrt(1.0 / nc + 0.25 / a1 + 0.25 / a2);
    return 1.0 / std::sqrt(a1 * a2);
  };
  m.pair_efficiency_raw = pair_efficiency(m.coincidence_rate, m.singles_1_raw, m.singles_2_raw);
  m.pair_efficiency_raw_error = eta_error(m.pair_efficiency_raw, n1, n2);
  if (m.singles_geomean > 0.0) {
    m.pair_efficiency = pair_efficiency(m.coincidence_rate, m.singles_1, m.singles_2);
    m.pair_efficiency_error = eta_error(m.pair_efficiency, m.singles_1 * t, m.singles_2 * t);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Fits

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> y_error;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_error = 0.0;
  double intercept_error = 0.0;
  double r_squared = 0.0;
  double chi_squared = 0.0;
  std::size_t points = 0;
  bool weighted = false;
};

namespace detail {

/// 1/sigma^2 weights if every point has an error, unit weights if none do.
inline std::vector<double> fit_weights(std::span<const DataPoint> points) {
  const auto with_error = std::count_if(points.begin(), points.end(),
                                        [](const DataPoint& p) { return p.y_error.has_value(); });
  std::vector<double> w(points.size(), 1.0);
  if (with_error == 0) return w;
  if (static_cast<std::size_t>(with_error) != points.size()) {
    throw Error(Errc::InvalidArgument, "either every point or no point must carry an error",
                "y_error");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double e = *points[i].y_error;
    if (!(e > 0.0)) throw Error(Errc::InvalidArgument, "y errors must be > 0", "y_error");
    w[i] = 1.0 / (e * e);
  }
  return w;
}

}  // namespace detail

/// Weighted least-squares straight line. Without y errors the parameter errors are
/// scaled by the residual variance.
inline LinearFit fit_linear(std::span<const DataPoint> points) {
  if (points.size() < 2) {
    throw Error(Errc::DegenerateAbscissa, "need at least two points", "points");
  }
  const auto w = detail::fit_weights(points);
  const bool weighted = points.front().y_error.has_value();

  double s = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += w[i];
    sx += w[i] * points[i].x;
    sy += w[i] * points[i].y;
  }
  const double xm = sx / s;
  const double ym = sy / s;
  double sxx = 0.0, sxy = 0.0, syy = 0.0, xscale = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].x - xm;
    const double dy = points[i].y - ym;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * dy;
    syy += w[i] * dy * dy;
    xscale = std::max(xscale, std::abs(points[i].x));
  }
  if (!(sxx > 1e-24 * s * std::max(xscale * xscale, 1e-300))) {
    throw Error(Errc::DegenerateAbscissa, "x values must not all coincide", "x");
  }

  LinearFit fit;
  fit.points = points.size();
  fit.weighted = weighted;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double r = points[i].y - (fit.intercept + fit.slope * points[i].x);
    fit.chi_squared += w[i] * r * r;
  }
  double var_scale = 1.0;
  if (!weighted) {
    var_scale = points.size() > 2 ? fit.chi_squared / static_cast<double>(points.size() - 2) : 0.0;
  }
  fit.slope_error = std::sqrt(var_scale / sxx);
  fit.intercept_error = std::sqrt(var_scale * (1.0 / s + xm * xm / sxx));
  if (syy > 0.0) {
    fit.r_squared = std::clamp(1.0 - fit.chi_squared / syy, 0.0, 1.0);
  } else {
    fit.r_squared = 1.0;
  }
  return fit;
}

struct PolarizationFit {
  double amplitude = 0.0;
  double offset = 0.0;
  double theta0_deg = 0.0;  // in [0, 180)
  double amplitude_error = 0.0;
  double offset_error = 0.0;
  double theta0_error_deg = 0.0;
  double residual_norm = 0.0;  // sqrt of the weighted residual sum of squares
  bool degenerate = false;     // amplitude ~ 0, theta0 reported as 0
};

/// Fits offset + amplitude*cos^2(theta - theta0) as a linear model in {1, cos 2θ, sin 2θ}.
/// Points use x = pump angle in degrees, y = rate.
inline PolarizationFit fit_polarization(std::span<const DataPoint> points) {
  if (points.size() < 4) {
    throw Error(Errc::InsufficientAngularSpan, "need at least four angles", "points");
  }
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const DataPoint& a, const DataPoint& b) { return a.x < b.x; });
  if (hi->x - lo->x < 90.0) {
    throw Error(Errc::InsufficientAngularSpan, "angles must span at least 90 degrees", "theta");
  }
  const auto w = detail::fit_weights(points);
  const bool weighted = points.front().y_error.has_value();
  const std::size_t n = points.size();
  constexpr double deg = std::numbers::pi / 180.0;

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  double yscale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sw = std::sqrt(w[i]);
    const double two_theta = 2.0 * points[i].x * deg;
    design(i, 0) = sw;
    design(i, 1) = sw * std::cos(two_theta);
    design(i, 2) = sw * std::sin(two_theta);
    rhs(i) = sw * points[i].y;
    yscale = std::max(yscale, std::abs(points[i].y));
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) {
    throw Error(Errc::InsufficientAngularSpan, "angles do not determine the cos^2 model", "theta");
  }
  const Eigen::Vector3d c = qr.solve(rhs);
  const Eigen::VectorXd resid = design * c - rhs;

  PolarizationFit fit;
  fit.residual_norm = resid.norm();
  double var_scale = 1.0;
  if (!weighted) var_scale = n > 3 ? resid.squaredNorm() / static_cast<double>(n - 3) : 0.0;
  const Eigen::Matrix3d cov = var_scale * (design.transpose() * design).inverse();

  const double rho = std::hypot(c(1), c(2));
  if (rho <= 1e-10 * std::max(yscale, 1e-300)) {
    fit.degenerate = true;
    fit.offset = c(0);
    fit.offset_error = std::sqrt(cov(0, 0));
    return fit;
  }
  fit.amplitude = 2.0 * rho;
  fit.offset = c(0) - rho;
  double theta0 = 0.5 * std::atan2(c(2), c(1)) / deg;
  if (theta0 < 0.0) theta0 += 180.0;
  if (theta0 >= 180.0) theta0 -= 180.0;
  fit.theta0_deg = theta0;

  // Jacobians of (rho, phi = atan2(c2, c1)) with respect to (c0, c1, c2)
  const Eigen::RowVector3d d_rho(0.0, c(1) / rho, c(2) / rho);
  const Eigen::RowVector3d d_phi(0.0, -c(2) / (rho * rho), c(1) / (rho * rho));
  const Eigen::RowVector3d d_offset = Eigen::RowVector3d(1.0, 0.0, 0.0) - d_rho;
  fit.amplitude_error = 2.0 * std::sqrt((d_rho * cov * d_rho.transpose()).value());
  fit.offset_error = std::sqrt((d_offset * cov * d_offset.transpose()).value());
  fit.theta0_error_deg = 0.5 * std::sqrt((d_phi * cov * d_phi.transpose()).value()) / deg;
  return fit;
}

}  // namespace fibspdc
