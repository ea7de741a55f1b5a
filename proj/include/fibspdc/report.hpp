#pragma once

// JSON and CSV serialization of results, plus the fiber catalog format.

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibspdc/detail/text.hpp"
#include "fibspdc/error.hpp"
#include "fibspdc/metrics.hpp"
#include "fibspdc/modecoupling.hpp"
#include "fibspdc/phasematch.hpp"
#include "fibspdc/simulator.hpp"
#include "fibspdc/tcspc.hpp"

namespace fibspdc {

using json = nlohmann::json;

namespace detail {
// JSON has no infinity; an unbounded value is written as null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace detail

inline constexpr std::string_view kSweepCsvHeader = "thickness_nm,rate_rel";

inline void write_sweep_csv(std::ostream& out, const ThicknessSweep& sweep) {
  out << kSweepCsvHeader << '\n';
  for (std::size_t i = 0; i < sweep.thicknesses.size(); ++i) {
    out << detail::format_double(sweep.thicknesses[i]) << ',' << detail::format_double(sweep.rates[i])
        << '\n';
  }
}

inline json sweep_sidecar(const ThicknessSweep& sweep) {
  return {{"peak_thickness_nm", sweep.peak_thickness},
          {"peak_rate_rel", sweep.peak_rate},
          {"absorbing", sweep.absorbing}};
}

inline json to_json(const PairMetrics& m) {
  return {{"singles_1_hz", m.singles_1},
          {"singles_2_hz", m.singles_2},
          {"singles_1_error_hz", m.singles_1_error},
          {"singles_2_error_hz", m.singles_2_error},
          {"singles_1_raw_hz", m.singles_1_raw},
          {"singles_2_raw_hz", m.singles_2_raw},
          {"singles_clamped", m.singles_clamped},
          {"singles_geomean_hz", m.singles_geomean},
          {"singles_geomean_error_hz", m.singles_geomean_error},
          {"coincidence_rate_hz", m.coincidence_rate},
          {"coincidence_rate_error_hz", m.coincidence_rate_error},
          {"accidental_rate_hz", m.accidental_rate},
          {"accidental_rate_error_hz", m.accidental_rate_error},
          {"car", m.car.value},
          {"car_error", m.car.error},
          {"car_is_lower_bound", m.car.lower_bound},
          {"pair_efficiency", m.pair_efficiency},
          {"pair_efficiency_error", m.pair_efficiency_error},
          {"pair_efficiency_raw", m.pair_efficiency_raw},
          {"pair_efficiency_raw_error", m.pair_efficiency_raw_error},
          {"window_ps", m.window_ps},
          {"duration_ps", m.duration_ps},
          {"error_model", "1-sigma first-order Poisson"}};
}

inline json to_json(const LinearFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"slope_error", f.slope_error},
          {"intercept_error", f.intercept_error},
          {"r_squared", f.r_squared},
          {"chi_squared", f.chi_squared},
          {"points", f.points},
          {"weighted", f.weighted}};
}

inline json to_json(const PolarizationFit& f) {
  return {{"amplitude", f.amplitude},
          {"offset", f.offset},
          {"theta0_deg", f.theta0_deg},
          {"amplitude_error", f.amplitude_error},
          {"offset_error", f.offset_error},
          {"theta0_error_deg", f.theta0_error_deg},
          {"residual_norm", f.residual_norm},
          {"degenerate", f.degenerate}};
}

inline json to_json(const CoincidenceResult& r) {
  return {{"coincidences", r.coincidences},
          {"accidentals", r.accidentals},
          {"accidentals_shifted", r.accidentals_shifted},
          {"accidentals_analytic", r.accidentals_analytic},
          {"accidental_method", r.method == AccidentalMethod::Shifted ? "shifted" : "analytic"},
          {"window_ps", r.window},
          {"offset_ps", r.offset},
          {"offset_used_ps", r.offset_used},
          {"duration_ps", r.duration},
          {"singles_1", r.singles_1},
          {"singles_2", r.singles_2}};
}

inline json to_json(const SourceModel& m) {
  return {{"pair_rate_hz", m.pair_rate_hz}, {"eta1", m.eta1},
          {"eta2", m.eta2},                 {"dark1_hz", m.dark1_hz},
          {"dark2_hz", m.dark2_hz},         {"jitter_sigma_ps", m.jitter_sigma_ps},
          {"dead_time_ps", m.dead_time_ps}, {"duration_ps", m.duration_ps},
          {"seed", m.seed}};
}

inline json to_json(const GroundTruth& g) {
  return {{"generated_pairs", g.generated_pairs},
          {"detected_1", g.detected_1},
          {"detected_2", g.detected_2},
          {"dark_1", g.dark_1},
          {"dark_2", g.dark_2},
          {"true_coincidences", g.true_coincidences}};
}

inline json to_json(const Expectations& e) {
  return {{"r1_hz", e.r1},
          {"r2_hz", e.r2},
          {"r_cc_hz", e.r_cc},
          {"accidental_rate_hz", e.accidental_rate},
          {"car", detail::finite_or_null(e.car)},
          {"eta", e.eta}};
}

inline json ground_truth_sidecar(const SourceModel& model, const GroundTruth& truth) {
  return {{"source_model", to_json(model)},
          {"ground_truth", to_json(truth)},
          {"rng", kRngAlgorithm}};
}

inline void write_g2_csv(std::ostream& out, const G2Histogram& h) {
  const bool can_normalize = h.normalization > 0.0;
  out << (can_normalize ? "tau_ps,counts,g2" : "tau_ps,counts") << '\n';
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << detail::format_double(h.bin_center(k)) << ',' << h.counts[k];
    if (can_normalize) {
      out << ',' << detail::format_double(static_cast<double>(h.counts[k]) / h.normalization);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Fiber catalog: JSON array of
//   {name, mode_field_diameter_um, reference_wavelength_nm, numerical_aperture,
//    core_diameter_um, modality: "single-mode" | "few-mode" | "multi-mode"}

inline json to_json(const FiberSpec& f) {
  return {{"name", f.name},
          {"mode_field_diameter_um", f.mode_field_diameter_um},
          {"reference_wavelength_nm", f.reference_wavelength_nm},
          {"numerical_aperture", f.numerical_aperture},
          {"core_diameter_um", f.core_diameter_um},
          {"modality", to_string(f.modality)}};
}

inline FiberSpec fiber_from_json(const json& j) {
  try {
    FiberSpec f;
    f.name = j.at("name").get<std::string>();
    f.mode_field_diameter_um = j.at("mode_field_diameter_um").get<double>();
    f.reference_wavelength_nm = j.at("reference_wavelength_nm").get<double>();
    f.numerical_aperture = j.at("numerical_aperture").get<double>();
    f.core_diameter_um = j.at("core_diameter_um").get<double>();
    f.modality = parse_modality(j.at("modality").get<std::string>());
    f.validate();
    return f;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("fiber record: ") + e.what(), "fiber");
  }
}

inline std::vector<FiberSpec> load_fiber_catalog(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("fiber catalog: ") + e.what(), "catalog");
  }
  if (!j.is_array()) throw Error(Errc::MalformedRecord, "fiber catalog must be a JSON array", "catalog");
  std::vector<FiberSpec> fibers;
  for (const auto& item : j) fibers.push_back(fiber_from_json(item));
  return fibers;
}

}  // namespace fibspdc
