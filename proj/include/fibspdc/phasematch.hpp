#pragma once

// Relative SPDC pair-generation rate versus crystal thickness for collinear
// three-wave mixing in an (optionally absorbing) crystal. All rates are relative:
// the prefactor that carries pump power and chi(2) is fixed to 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "fibspdc/dispersion.hpp"
#include "fibspdc/error.hpp"

namespace fibspdc {

inline constexpr double kEnergyConservationTolerance = 1e-9;
inline constexpr double kSeriesThreshold = 1e-6;

inline double idler_wavelength(double lambda_p_nm, double lambda_s_nm) {
  if (!(lambda_p_nm > 0.0)) {
    throw Error(Errc::NonPositiveWavelength, "pump wavelength must be positive", "lambda_p");
  }
  if (!(lambda_s_nm > lambda_p_nm)) {
    throw Error(Errc::DegenerateOrInverted, "signal wavelength must exceed pump wavelength",
                "lambda_s");
  }
  return 1.0 / (1.0 / lambda_p_nm - 1.0 / lambda_s_nm);
}

/// Collinear pump/signal/idler configuration. Wavelengths in nm.
struct SpdcConfig {
  double lambda_p = 405.0;
  double lambda_s = 810.0;
  double lambda_i = 810.0;
  Axis pol_p = Axis::Y;
  Axis pol_s = Axis::Y;
  Axis pol_i = Axis::Y;

  /// Builds a configuration whose idler follows from energy conservation.
  static SpdcConfig from_pump_signal(double lambda_p, double lambda_s, Axis pol_p = Axis::Y,
                                     Axis pol_s = Axis::Y, Axis pol_i = Axis::Y) {
    SpdcConfig c{lambda_p, lambda_s, idler_wavelength(lambda_p, lambda_s), pol_p, pol_s, pol_i};
    c.validate();
    return c;
  }

  void validate() const {
    if (!(lambda_p > 0.0) || !(lambda_s > 0.0) || !(lambda_i > 0.0)) {
      throw Error(Errc::NonPositiveWavelength, "all wavelengths must be positive");
    }
    const double lhs = 1.0 / lambda_p;
    const double rhs = 1.0 / lambda_s + 1.0 / lambda_i;
    if (std::abs(lhs - rhs) > kEnergyConservationTolerance * lhs) {
      throw Error(Errc::EnergyNotConserved, "1/lambda_p must equal 1/lambda_s + 1/lambda_i",
                  "lambda_i");
    }
  }
};

/// Complex phase mismatch k_p - k_s - k_i in rad/nm.
struct PhaseMismatch {
  std::complex<double> value;
};

inline PhaseMismatch phase_mismatch(const SpdcConfig& config, const DispersionTable& table) {
  config.validate();
  const auto k = [&table](Axis axis, double lambda) {
    return complex_wavenumber(index_at(table, axis, lambda), lambda);
  };
  return {k(config.pol_p, config.lambda_p) - k(config.pol_s, config.lambda_s) -
          k(config.pol_i, config.lambda_i)};
}

/// |(exp(i dk L) - 1)/(i dk)|^2, the squared thickness integral of exp(i dk z).
inline double rate_absorbing(PhaseMismatch dk, double thickness_nm) {
  if (!(thickness_nm >= 0.0)) {
    throw Error(Errc::NegativeThickness, "thickness must be >= 0", "L");
  }
  const std::complex<double> u = std::complex<double>(0.0, 1.0) * dk.value * thickness_nm;
  if (std::abs(u) < kSeriesThreshold) {
    // (e^u - 1)/u = 1 + u/2 + u^2/6 + u^3/24 + O(u^4)
    const std::complex<double> s = 1.0 + u * (1.0 / 2.0 + u * (1.0 / 6.0 + u * (1.0 / 24.0)));
    return thickness_nm * thickness_nm * std::norm(s);
  }
  // e^u - 1 split so that neither part cancels catastrophically
  const double a = u.real();
  const double b = u.imag();
  const double half_sin = std::sin(0.5 * b);
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return (re * re + im * im) / std::norm(dk.value);
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// L^2 sinc^2(dk L / 2) for a lossless crystal.
inline double rate_transparent(double dk_real, double thickness_nm) {
  if (!(thickness_nm >= 0.0)) {
    throw Error(Errc::NegativeThickness, "thickness must be >= 0", "L");
  }
  const double s = sinc(0.5 * dk_real * thickness_nm);
  return thickness_nm * thickness_nm * s * s;
}

inline double coherence_length(double dk_real) {
  if (dk_real == 0.0 || !std::isfinite(dk_real)) {
    throw Error(Errc::ZeroMismatch, "coherence length undefined for zero phase mismatch", "dk");
  }
  return std::numbers::pi / std::abs(dk_real);
}

struct ThicknessSweep {
  std::vector<double> thicknesses;
  std::vector<double> rates;
  double peak_thickness = 0.0;
  double peak_rate = 0.0;
  bool absorbing = false;
};

namespace detail {

/// Golden-section maximization of f on [lo, hi] until the bracket is narrower than tol.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Relative rates whose refined peaks agree to this tolerance count as the same height;
/// the thinnest such peak is reported.
inline constexpr double kPeakTieTolerance = 1e-6;

/// Uniform thickness sweep. Every grid local maximum is refined by golden-section search
/// and the highest refined peak is reported (ties go to the thinnest crystal, so a lossless
/// crystal reports its coherence length rather than a later equal-height lobe).
inline ThicknessSweep thickness_sweep(PhaseMismatch dk, double l_min_nm, double l_max_nm,
                                      std::size_t steps, bool absorbing,
                                      double refine_tolerance_nm = 0.01) {
  if (!(l_min_nm >= 0.0) || !(l_max_nm > l_min_nm)) {
    throw Error(Errc::InvalidSweep, "require 0 <= L_min < L_max", "thickness");
  }
  if (steps < 2) throw Error(Errc::InvalidSweep, "require at least 2 sweep steps", "steps");

  const auto rate = [&](double L) {
    return absorbing ? rate_absorbing(dk, L) : rate_transparent(dk.value.real(), L);
  };

  ThicknessSweep sweep;
  sweep.absorbing = absorbing;
  sweep.thicknesses.resize(steps);
  sweep.rates.resize(steps);
  const double step = (l_max_nm - l_min_nm) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double L = (i + 1 == steps) ? l_max_nm : l_min_nm + step * static_cast<double>(i);
    sweep.thicknesses[i] = L;
    sweep.rates[i] = rate(L);
  }

  bool have_peak = false;
  for (std::size_t i = 0; i < steps; ++i) {
    const double r = sweep.rates[i];
    const bool left_ok = i == 0 || r >= sweep.rates[i - 1];
    const bool right_ok = i + 1 == steps || r >= sweep.rates[i + 1];
    if (!left_ok || !right_ok) continue;

    double L = sweep.thicknesses[i];
    double value = r;
    const double lo = sweep.thicknesses[i == 0 ? 0 : i - 1];
    const double hi = sweep.thicknesses[i + 1 == steps ? i : i + 1];
    if (hi > lo) {
      const double refined = detail::golden_section_max(rate, lo, hi, refine_tolerance_nm);
      const double refined_value = rate(refined);
      if (refined_value > value) {
        L = refined;
        value = refined_value;
      }
    }
    if (!have_peak || value > sweep.peak_rate * (1.0 + kPeakTieTolerance)) {
      sweep.peak_thickness = L;
      sweep.peak_rate = value;
      have_peak = true;
    }
  }
  return sweep;
}

inline ThicknessSweep thickness_sweep(const SpdcConfig& config, const DispersionTable& table,
                                      double l_min_nm, double l_max_nm, std::size_t steps,
                                      bool absorbing, double refine_tolerance_nm = 0.01) {
  return thickness_sweep(phase_mismatch(config, table), l_min_nm, l_max_nm, steps, absorbing,
                         refine_tolerance_nm);
}

/// offset + amplitude * cos^2(theta - theta0), angles in degrees.
inline double pump_projection_rate(double theta_deg, double theta0_deg, double amplitude,
                                   double offset) {
  if (!(amplitude >= 0.0)) {
    throw Error(Errc::NegativeAmplitude, "amplitude must be >= 0", "amplitude");
  }
  if (!(offset >= 0.0)) throw Error(Errc::NegativeAmplitude, "offset must be >= 0", "offset");
  const double c = std::cos((theta_deg - theta0_deg) * std::numbers::pi / 180.0);
  return offset + amplitude * c * c;
}

}  // namespace fibspdc
