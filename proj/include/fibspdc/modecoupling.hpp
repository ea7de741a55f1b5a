#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "fibspdc/error.hpp"

namespace fibspdc {

enum class FiberModality { SingleMode, FewMode, MultiMode };

inline constexpr std::string_view to_string(FiberModality m) noexcept {
  switch (m) {
    case FiberModality::SingleMode: return "single-mode";
    case FiberModality::FewMode: return "few-mode";
    case FiberModality::MultiMode: return "multi-mode";
  }
  return "unknown";
}

inline FiberModality parse_modality(std::string_view s) {
  if (s == "single-mode") return FiberModality::SingleMode;
  if (s == "few-mode") return FiberModality::FewMode;
  if (s == "multi-mode") return FiberModality::MultiMode;
  throw Error(Errc::MalformedRecord, "unknown fiber modality '" + std::string(s) + "'", "modality");
}

struct FiberSpec {
  std::string name;
  double mode_field_diameter_um = 0.0;
  double reference_wavelength_nm = 0.0;
  double numerical_aperture = 0.0;
  double core_diameter_um = 0.0;
  FiberModality modality = FiberModality::SingleMode;

  void validate() const {
    if (!(mode_field_diameter_um > 0.0) || !(reference_wavelength_nm > 0.0) ||
        !(core_diameter_um > 0.0)) {
      throw Error(Errc::InvalidArgument, "fiber '" + name + "': physical fields must be > 0", name);
    }
    if (!(numerical_aperture > 0.0 && numerical_aperture < 1.0)) {
      throw Error(Errc::InvalidNA, "fiber '" + name + "': NA must lie in (0, 1)",
                  "numerical_aperture");
    }
  }
};

/// Gaussian beam, waist = 1/e^2 intensity radius (any consistent length unit).
struct GaussianMode {
  double waist = 0.0;
  double wavelength_nm = 0.0;
};

/// Pump waist that best matches a collection mode of the given waist: w_c / sqrt(2).
inline double optimal_pump_waist(double collection_waist) {
  if (!(collection_waist > 0.0)) {
    throw Error(Errc::NonPositiveWaist, "collection waist must be > 0", "collection_waist");
  }
  return collection_waist / std::numbers::sqrt2;
}

/// Power overlap of two co-located, co-axial Gaussian modes: (2 wa wb / (wa^2 + wb^2))^2.
inline double gaussian_overlap(const GaussianMode& a, const GaussianMode& b) {
  if (!(a.waist > 0.0) || !(b.waist > 0.0)) {
    throw Error(Errc::NonPositiveWaist, "mode waists must be > 0", "waist");
  }
  const double r = 2.0 * a.waist * b.waist / (a.waist * a.waist + b.waist * b.waist);
  return r * r;
}

/// Emission waist produced by a pump of waist w_p (pair amplitude follows pump intensity).
inline double emission_waist(double pump_waist) { return pump_waist * std::numbers::sqrt2; }

/// In-air acceptance half-angle arcsin(NA), degrees.
inline double acceptance_half_angle(const FiberSpec& fiber) {
  if (!(fiber.numerical_aperture > 0.0 && fiber.numerical_aperture < 1.0)) {
    throw Error(Errc::InvalidNA, "NA must lie in (0, 1)", "numerical_aperture");
  }
  return std::asin(fiber.numerical_aperture) * 180.0 / std::numbers::pi;
}

}  // namespace fibspdc
