#pragma once

// Coincidence counting and g2(tau) histogramming over photon timestamp streams.
//
// Matching rule: stream 2 is shifted by -offset and the two streams are swept together
// in time order (stream 1 first on equal times). Each arriving event pairs with the
// oldest still-unpaired event of the other stream within +-window/2; an event is used at
// most once. This greedy rule yields a maximum-cardinality matching, so the count does
// not depend on which stream is called "1" or on tie ordering.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <future>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fibspdc/error.hpp"

namespace fibspdc {

using Picoseconds = std::int64_t;

inline constexpr Picoseconds kDefaultWindowPs = 1'500;           // 1.5 ns
inline constexpr Picoseconds kDefaultBinWidthPs = 60;            // 60 ps
inline constexpr Picoseconds kDefaultAccidentalOffsetPs = 100'000;  // 100 ns

struct TimestampStream {
  std::uint8_t channel = 0;
  std::vector<Picoseconds> times;  // non-decreasing, within [0, duration]
  Picoseconds duration = 0;
};

inline bool is_sorted_stream(std::span<const Picoseconds> times) {
  return std::is_sorted(times.begin(), times.end());
}

inline void require_sorted(const TimestampStream& s) {
  if (!is_sorted_stream(s.times)) {
    throw Error(Errc::UnsortedStream,
                "channel " + std::to_string(s.channel) + " timestamps are not non-decreasing",
                "channel " + std::to_string(s.channel));
  }
}

/// Checks every TimestampStream invariant.
inline void validate(const TimestampStream& s) {
  if (s.duration <= 0) {
    throw Error(Errc::MalformedRecord, "stream duration must be > 0", "duration");
  }
  require_sorted(s);
  if (!s.times.empty() && (s.times.front() < 0 || s.times.back() > s.duration)) {
    throw Error(Errc::MalformedRecord,
                "channel " + std::to_string(s.channel) + " has events outside [0, duration]",
                "time_ps");
  }
}

namespace detail {

inline void require_window(Picoseconds window) {
  if (window <= 0) throw Error(Errc::NonPositiveWindow, "coincidence window must be > 0", "window");
}

/// Time-ordered sweep over a (stream 1) and b shifted by -offset (stream 2).
inline std::uint64_t sweep_count(std::span<const Picoseconds> a, std::span<const Picoseconds> b,
                                 Picoseconds offset, Picoseconds window) {
  std::deque<Picoseconds> pending_a;
  std::deque<Picoseconds> pending_b;
  std::uint64_t count = 0;

  const auto arrive = [window, &count](Picoseconds t, std::deque<Picoseconds>& mine,
                                       std::deque<Picoseconds>& theirs) {
    while (!theirs.empty() && 2 * (t - theirs.front()) > window) theirs.pop_front();
    if (!theirs.empty()) {
      theirs.pop_front();
      ++count;
      return;
    }
    while (!mine.empty() && 2 * (t - mine.front()) > window) mine.pop_front();
    mine.push_back(t);
  };

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a = j == b.size() || (i < a.size() && a[i] <= b[j] - offset);
    if (take_a) {
      arrive(a[i++], pending_a, pending_b);
    } else {
      arrive(b[j++] - offset, pending_b, pending_a);
    }
  }
  return count;
}

/// Split point in the shifted timeline such that no event before it can pair with any
/// event at or after it. Returns the first-stream and second-stream indices of the cut.
inline std::pair<std::size_t, std::size_t> safe_cut(std::span<const Picoseconds> a,
                                                    std::span<const Picoseconds> b,
                                                    Picoseconds offset, Picoseconds window,
                                                    Picoseconds at) {
  while (true) {
    const auto ia = static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), at) - a.begin());
    const auto ib =
        static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), at + offset) - b.begin());
    const bool has_prev = ia > 0 || ib > 0;
    const bool has_next = ia < a.size() || ib < b.size();
    if (!has_prev || !has_next) return {ia, ib};

    Picoseconds prev = std::numeric_limits<Picoseconds>::min();
    if (ia > 0) prev = std::max(prev, a[ia - 1]);
    if (ib > 0) prev = std::max(prev, b[ib - 1] - offset);
    Picoseconds next = std::numeric_limits<Picoseconds>::max();
    if (ia < a.size()) next = std::min(next, a[ia]);
    if (ib < b.size()) next = std::min(next, b[ib] - offset);
    if (2 * (next - prev) > window) return {ia, ib};
    at = next + 1;
  }
}

}  // namespace detail

/// Number of matched pairs with |t2 - t1 - offset| <= window/2.
inline std::uint64_t coincidence_count(const TimestampStream& s1, const TimestampStream& s2,
                                       Picoseconds window, Picoseconds offset = 0) {
  detail::require_window(window);
  require_sorted(s1);
  require_sorted(s2);
  return detail::sweep_count(s1.times, s2.times, offset, window);
}

/// Same result as coincidence_count, computed over independent time chunks in parallel.
/// Chunks are cut only at gaps wider than the window, so no pair straddles a boundary.
inline std::uint64_t chunked_coincidence_count(const TimestampStream& s1,
                                               const TimestampStream& s2, Picoseconds window,
                                               Picoseconds offset, Picoseconds chunk_span,
                                               unsigned threads = 0) {
  detail::require_window(window);
  if (chunk_span <= 10 * window) {
    throw Error(Errc::ChunkTooSmall, "chunk span must exceed 10 coincidence windows", "chunk_span");
  }
  require_sorted(s1);
  require_sorted(s2);
  const std::span<const Picoseconds> a = s1.times;
  const std::span<const Picoseconds> b = s2.times;
  if (a.empty() || b.empty()) return 0;

  const Picoseconds first = std::min(a.front(), b.front() - offset);
  const Picoseconds last = std::max(a.back(), b.back() - offset);

  std::vector<std::pair<std::size_t, std::size_t>> cuts{{0, 0}};
  for (Picoseconds at = first + chunk_span; at <= last; at += chunk_span) {
    const auto cut = detail::safe_cut(a, b, offset, window, at);
    if (cut.first > cuts.back().first || cut.second > cuts.back().second) cuts.push_back(cut);
  }
  cuts.emplace_back(a.size(), b.size());

  const std::size_t segments = cuts.size() - 1;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, segments));

  const auto count_range = [&](std::size_t worker) {
    std::uint64_t total = 0;
    for (std::size_t k = worker; k < segments; k += threads) {
      const auto [a0, b0] = cuts[k];
      const auto [a1, b1] = cuts[k + 1];
      total += detail::sweep_count(a.subspan(a0, a1 - a0), b.subspan(b0, b1 - b0), offset, window);
    }
    return total;
  };

  std::vector<std::future<std::uint64_t>> futures;
  for (unsigned w = 1; w < threads; ++w) {
    futures.push_back(std::async(std::launch::async, count_range, w));
  }
  std::uint64_t total = count_range(0);
  for (auto& f : futures) total += f.get();
  return total;
}

struct AccidentalEstimate {
  std::uint64_t shifted = 0;  // coincidences at the shifted offset
  double analytic = 0.0;      // N1 * N2 * window / duration
  Picoseconds offset = 0;
};

inline AccidentalEstimate accidental_estimate(const TimestampStream& s1, const TimestampStream& s2,
                                              Picoseconds window,
                                              Picoseconds offset = kDefaultAccidentalOffsetPs) {
  detail::require_window(window);
  const Picoseconds magnitude = offset < 0 ? -offset : offset;
  if (magnitude < 10 * window) {
    throw Error(Errc::OffsetTooSmall, "accidental offset must be at least 10 windows", "offset");
  }
  const Picoseconds duration = std::min(s1.duration, s2.duration);
  if (duration <= 0) throw Error(Errc::MalformedRecord, "stream duration must be > 0", "duration");
  if (magnitude + window > duration) {
    throw Error(Errc::OutOfRange, "accidental offset plus window exceeds the acquisition span",
                "offset");
  }
  AccidentalEstimate est;
  est.offset = offset;
  est.shifted = coincidence_count(s1, s2, window, offset);
  est.analytic = static_cast<double>(s1.times.size()) * static_cast<double>(s2.times.size()) *
                 static_cast<double>(window) / static_cast<double>(duration);
  return est;
}

enum class AccidentalMethod { Shifted, Analytic };

struct CoincidenceResult {
  std::uint64_t coincidences = 0;
  double accidentals = 0.0;  // per the selected method
  std::uint64_t accidentals_shifted = 0;
  double accidentals_analytic = 0.0;
  AccidentalMethod method = AccidentalMethod::Shifted;
  Picoseconds window = 0;
  Picoseconds offset = 0;       // delay applied to stream 2 for true coincidences
  Picoseconds offset_used = 0;  // delay used for the shifted-window estimate
  Picoseconds duration = 0;
  std::size_t singles_1 = 0;
  std::size_t singles_2 = 0;
};

inline CoincidenceResult analyze_coincidences(const TimestampStream& s1, const TimestampStream& s2,
                                              Picoseconds window, Picoseconds offset = 0,
                                              Picoseconds accidental_offset = kDefaultAccidentalOffsetPs,
                                              AccidentalMethod method = AccidentalMethod::Shifted) {
  CoincidenceResult r;
  r.window = window;
  r.offset = offset;
  r.offset_used = offset + accidental_offset;
  r.duration = std::min(s1.duration, s2.duration);
  r.singles_1 = s1.times.size();
  r.singles_2 = s2.times.size();
  r.coincidences = coincidence_count(s1, s2, window, offset);
  const auto acc = accidental_estimate(s1, s2, window, r.offset_used);
  r.accidentals_shifted = acc.shifted;
  r.accidentals_analytic = acc.analytic;
  r.method = method;
  r.accidentals =
      method == AccidentalMethod::Shifted ? static_cast<double>(acc.shifted) : acc.analytic;
  return r;
}

/// Histogram of all arrival-time differences t2 - t1 within [-tau_max, tau_max].
/// Bin k covers [tau_min + k*w, tau_min + (k+1)*w); the last bin also holds tau_max.
struct G2Histogram {
  Picoseconds bin_width = 0;
  Picoseconds tau_min = 0;
  Picoseconds tau_max = 0;
  std::vector<std::uint64_t> counts;
  double normalization = 0.0;  // mean counts per bin in the flat wings (|tau| > 0.8 tau_max)

  double bin_center(std::size_t k) const {
    return static_cast<double>(tau_min) + (static_cast<double>(k) + 0.5) * static_cast<double>(bin_width);
  }

  std::size_t bin_of(Picoseconds tau) const {
    if (tau == tau_max) return counts.size() - 1;
    return static_cast<std::size_t>((tau - tau_min) / bin_width);
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  std::vector<double> normalized() const {
    if (!(normalization > 0.0)) {
      throw Error(Errc::ZeroBackground, "g2 background level is zero; cannot normalize",
                  "tau_max");
    }
    std::vector<double> g2(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
      g2[k] = static_cast<double>(counts[k]) / normalization;
    }
    return g2;
  }
};

inline G2Histogram g2_histogram(const TimestampStream& s1, const TimestampStream& s2,
                                Picoseconds bin_width = kDefaultBinWidthPs,
                                Picoseconds tau_max = 30'000) {
  if (bin_width <= 0) throw Error(Errc::NonPositiveWindow, "bin width must be > 0", "bin_width");
  if (tau_max <= 0 || tau_max % bin_width != 0) {
    throw Error(Errc::InvalidArgument, "tau_max must be a positive multiple of the bin width",
                "tau_max");
  }
  require_sorted(s1);
  require_sorted(s2);

  G2Histogram h;
  h.bin_width = bin_width;
  h.tau_min = -tau_max;
  h.tau_max = tau_max;
  h.counts.assign(static_cast<std::size_t>(2 * tau_max / bin_width), 0);

  const auto& a = s1.times;
  const auto& b = s2.times;
  std::size_t lo = 0;
  for (const Picoseconds t1 : a) {
    while (lo < b.size() && b[lo] < t1 - tau_max) ++lo;
    for (std::size_t k = lo; k < b.size() && b[k] <= t1 + tau_max; ++k) {
      ++h.counts[h.bin_of(b[k] - t1)];
    }
  }

  double wing_sum = 0.0;
  std::size_t wing_bins = 0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double c = h.bin_center(k);
    if (std::abs(c) > 0.8 * static_cast<double>(tau_max)) {
      wing_sum += static_cast<double>(h.counts[k]);
      ++wing_bins;
    }
  }
  h.normalization = wing_bins > 0 ? wing_sum / static_cast<double>(wing_bins) : 0.0;
  return h;
}

}  // namespace fibspdc
