#pragma once

// Quantities with mandatory unit suffixes, e.g. "1.5ns", "60ps", "2000nm", "2.3um", "1kHz".

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "fibspdc/detail/text.hpp"
#include "fibspdc/error.hpp"

namespace fibspdc::units {

namespace detail {

using Scale = std::pair<std::string_view, double>;

template <std::size_t N>
double parse_with(std::string_view text, const std::array<Scale, N>& table, std::string_view what,
                  const std::string& parameter) {
  const auto s = fibspdc::detail::trim(text);
  // longest suffix first so "ms" is not read as "s"
  const Scale* best = nullptr;
  for (const auto& entry : table) {
    if (s.size() > entry.first.size() && s.ends_with(entry.first) &&
        (best == nullptr || entry.first.size() > best->first.size())) {
      best = &entry;
    }
  }
  if (best == nullptr) {
    throw Error(Errc::UsageError,
                "'" + std::string(text) + "' needs a " + std::string(what) + " unit suffix", parameter);
  }
  const auto number = fibspdc::detail::parse_double(s.substr(0, s.size() - best->first.size()));
  if (!number || !std::isfinite(*number)) {
    throw Error(Errc::UsageError, "cannot parse quantity '" + std::string(text) + "'", parameter);
  }
  return *number * best->second;
}

}  // namespace detail

/// Time in integer picoseconds (rounded to the nearest ps).
inline std::int64_t time_ps(std::string_view text, const std::string& parameter = {}) {
  static constexpr std::array<detail::Scale, 7> table{{{"ps", 1.0},
                                                       {"ns", 1e3},
                                                       {"us", 1e6},
                                                       {"\xC2\xB5s", 1e6},
                                                       {"ms", 1e9},
                                                       {"s", 1e12},
                                                       {"min", 60e12}}};
  return static_cast<std::int64_t>(std::llround(detail::parse_with(text, table, "time", parameter)));
}

/// Length in nanometres.
inline double length_nm(std::string_view text, const std::string& parameter = {}) {
  static constexpr std::array<detail::Scale, 5> table{
      {{"nm", 1.0}, {"um", 1e3}, {"\xC2\xB5m", 1e3}, {"mm", 1e6}, {"m", 1e9}}};
  return detail::parse_with(text, table, "length", parameter);
}

inline double length_um(std::string_view text, const std::string& parameter = {}) {
  return length_nm(text, parameter) * 1e-3;
}

/// Rate in hertz.
inline double rate_hz(std::string_view text, const std::string& parameter = {}) {
  // "Hz/mW" is accepted for pump-normalized rates, which only ever enter as ratios
  static constexpr std::array<detail::Scale, 5> table{
      {{"mHz", 1e-3}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"Hz/mW", 1.0}}};
  return detail::parse_with(text, table, "rate", parameter);
}

}  // namespace fibspdc::units
