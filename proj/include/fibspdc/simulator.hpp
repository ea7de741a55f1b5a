#pragma once

// Monte Carlo generator of two-detector photon timestamp streams from a CW pair source.
//
// Pairs arrive as a homogeneous Poisson process. Each photon reaches its detector with
// probability eta_i and receives independent Gaussian timing jitter; Poisson dark counts
// are merged in; a non-paralyzable dead time is applied per detector in time order.
// Random numbers come from std::mt19937_64 (whose output sequence is fixed by the C++
// standard) with hand-written transforms, so a seed reproduces the same bytes on every
// conforming platform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "fibspdc/error.hpp"
#include "fibspdc/tcspc.hpp"

namespace fibspdc {

inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64; uniform=(x>>11)*2^-53; exponential=-log1p(-u)/rate; normal=box-muller";

inline constexpr double kDefaultDeadTimePs = 22'000.0;  // 22 ns
inline constexpr double kDefaultJitterSigmaPs = 350.0;

struct SourceModel {
  double pair_rate_hz = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double dark1_hz = 0.0;
  double dark2_hz = 0.0;
  double jitter_sigma_ps = kDefaultJitterSigmaPs;
  double dead_time_ps = kDefaultDeadTimePs;
  Picoseconds duration_ps = 0;
  std::uint64_t seed = 0;

  void validate() const {
    const auto fail = [](const char* param, const char* what) {
      throw Error(Errc::InvalidModel, what, param);
    };
    if (!(pair_rate_hz >= 0.0) || !std::isfinite(pair_rate_hz)) fail("pair_rate", "pair rate must be >= 0");
    if (!(eta1 >= 0.0 && eta1 <= 1.0)) fail("eta1", "eta1 must lie in [0, 1]");
    if (!(eta2 >= 0.0 && eta2 <= 1.0)) fail("eta2", "eta2 must lie in [0, 1]");
    if (!(dark1_hz >= 0.0) || !std::isfinite(dark1_hz)) fail("dark1", "dark rate must be >= 0");
    if (!(dark2_hz >= 0.0) || !std::isfinite(dark2_hz)) fail("dark2", "dark rate must be >= 0");
    if (!(jitter_sigma_ps >= 0.0) || !std::isfinite(jitter_sigma_ps)) fail("jitter", "jitter must be >= 0");
    if (!(dead_time_ps >= 0.0) || !std::isfinite(dead_time_ps)) fail("dead_time", "dead time must be >= 0");
    if (duration_ps <= 0) fail("duration", "duration must be > 0");
  }
};

struct GroundTruth {
  std::uint64_t generated_pairs = 0;
  std::uint64_t detected_1 = 0;  // events in the output stream, darks included
  std::uint64_t detected_2 = 0;
  std::uint64_t dark_1 = 0;  // dark events surviving dead time
  std::uint64_t dark_2 = 0;
  std::uint64_t true_coincidences = 0;  // pairs with both photons in the output streams
};

struct Simulation {
  TimestampStream channel1;
  TimestampStream channel2;
  GroundTruth truth;
};

namespace detail {

class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::pair<double, double> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

struct TaggedEvent {
  Picoseconds time;
  std::int64_t pair;  // -1 for dark counts
};

inline void add_darks(SimRng& rng, double rate_hz, Picoseconds duration,
                      std::vector<TaggedEvent>& out) {
  if (rate_hz <= 0.0) return;
  const double rate_per_ps = rate_hz * 1e-12;
  double t = 0.0;
  while (true) {
    t += rng.exponential(rate_per_ps);
    if (t >= static_cast<double>(duration)) return;
    out.push_back({static_cast<Picoseconds>(std::llround(t)), -1});
  }
}

/// Sorts, applies non-paralyzable dead time, and returns the surviving events.
inline std::vector<TaggedEvent> apply_dead_time(std::vector<TaggedEvent> events, double dead_time_ps) {
  std::sort(events.begin(), events.end(), [](const TaggedEvent& a, const TaggedEvent& b) {
    return a.time != b.time ? a.time < b.time : a.pair < b.pair;
  });
  std::vector<TaggedEvent> kept;
  kept.reserve(events.size());
  for (const auto& e : events) {
    if (!kept.empty() && static_cast<double>(e.time - kept.back().time) < dead_time_ps) continue;
    kept.push_back(e);
  }
  return kept;
}

}  // namespace detail

inline Simulation simulate(const SourceModel& model) {
  model.validate();
  detail::SimRng rng(model.seed);
  const auto duration = model.duration_ps;
  const auto in_span = [duration](double t) { return t >= 0.0 && t <= static_cast<double>(duration); };

  std::vector<detail::TaggedEvent> arm1;
  std::vector<detail::TaggedEvent> arm2;
  std::uint64_t pairs = 0;
  if (model.pair_rate_hz > 0.0) {
    const double rate_per_ps = model.pair_rate_hz * 1e-12;
    double t = 0.0;
    while (true) {
      t += rng.exponential(rate_per_ps);
      if (t >= static_cast<double>(duration)) break;
      // fixed draw order per pair keeps the stream reproducible for any parameter values
      const bool hit1 = rng.uniform() < model.eta1;
      const bool hit2 = rng.uniform() < model.eta2;
      const auto [g1, g2] = rng.normal_pair();
      const auto id = static_cast<std::int64_t>(pairs++);
      const double t1 = t + model.jitter_sigma_ps * g1;
      const double t2 = t + model.jitter_sigma_ps * g2;
      if (hit1 && in_span(t1)) arm1.push_back({static_cast<Picoseconds>(std::llround(t1)), id});
      if (hit2 && in_span(t2)) arm2.push_back({static_cast<Picoseconds>(std::llround(t2)), id});
    }
  }
  detail::add_darks(rng, model.dark1_hz, duration, arm1);
  detail::add_darks(rng, model.dark2_hz, duration, arm2);

  const auto kept1 = detail::apply_dead_time(std::move(arm1), model.dead_time_ps);
  const auto kept2 = detail::apply_dead_time(std::move(arm2), model.dead_time_ps);

  Simulation sim;
  sim.truth.generated_pairs = pairs;
  std::vector<bool> seen1(pairs, false);
  sim.channel1 = {0, {}, duration};
  sim.channel2 = {1, {}, duration};
  sim.channel1.times.reserve(kept1.size());
  sim.channel2.times.reserve(kept2.size());
  for (const auto& e : kept1) {
    sim.channel1.times.push_back(std::min(e.time, duration));
    if (e.pair >= 0) seen1[static_cast<std::size_t>(e.pair)] = true;
    else ++sim.truth.dark_1;
  }
  for (const auto& e : kept2) {
    sim.channel2.times.push_back(std::min(e.time, duration));
    if (e.pair >= 0) {
      if (seen1[static_cast<std::size_t>(e.pair)]) ++sim.truth.true_coincidences;
    } else {
      ++sim.truth.dark_2;
    }
  }
  sim.truth.detected_1 = sim.channel1.times.size();
  sim.truth.detected_2 = sim.channel2.times.size();
  return sim;
}

/// Closed-form rates for a model, neglecting dead time and jitter
/// (valid for rate * dead_time << 1 and jitter << window).
struct Expectations {
  double r1 = 0.0;
  double r2 = 0.0;
  double r_cc = 0.0;
  double accidental_rate = 0.0;
  double car = 0.0;
  double eta = 0.0;
};

inline Expectations analytic_expectations(const SourceModel& model, Picoseconds window_ps) {
  Expectations e;
  e.r1 = model.pair_rate_hz * model.eta1 + model.dark1_hz;
  e.r2 = model.pair_rate_hz * model.eta2 + model.dark2_hz;
  e.r_cc = model.pair_rate_hz * model.eta1 * model.eta2;
  e.accidental_rate = e.r1 * e.r2 * static_cast<double>(window_ps) * 1e-12;
  if (e.accidental_rate > 0.0) {
    e.car = e.r_cc / e.accidental_rate;
  } else {
    e.car = e.r_cc > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  e.eta = e.r1 > 0.0 && e.r2 > 0.0 ? e.r_cc / std::sqrt(e.r1 * e.r2) : 0.0;
  return e;
}

}  // namespace fibspdc
