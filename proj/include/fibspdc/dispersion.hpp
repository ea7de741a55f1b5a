#pragma once

// Anisotropic complex refractive index tables.
//
// Sign convention: fields propagate as exp(+i k z) with k = 2*pi*(n + i*kappa)/lambda,
// so an absorbing medium has Im(k) >= 0 and amplitudes decay along +z.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fibspdc/detail/text.hpp"
#include "fibspdc/error.hpp"

namespace fibspdc {

enum class Axis { X = 0, Y = 1, Z = 2 };

inline constexpr char axis_name(Axis a) noexcept {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

inline Axis parse_axis(std::string_view s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw Error(Errc::InvalidArgument, "axis must be one of x, y, z: '" + std::string(s) + "'");
}

struct ComplexIndex {
  double n = 1.0;
  double kappa = 0.0;

  std::complex<double> value() const noexcept { return {n, kappa}; }
  friend bool operator==(const ComplexIndex&, const ComplexIndex&) = default;
};

inline constexpr std::string_view kDispersionHeader = "wavelength_nm,n_x,k_x,n_y,k_y,n_z,k_z";

/// Per-axis complex index n_i(lambda) + i*kappa_i(lambda) on an ascending wavelength grid (nm).
/// Immutable once constructed; the constructor enforces every invariant.
class DispersionTable {
 public:
  struct Column {
    std::vector<double> n;
    std::vector<double> kappa;
  };

  DispersionTable(std::vector<double> wavelengths_nm, std::array<Column, 3> axes)
      : wavelengths_(std::move(wavelengths_nm)), axes_(std::move(axes)) {
    if (wavelengths_.size() < 2) {
      throw Error(Errc::TooFewRows, "dispersion table needs at least two wavelengths");
    }
    for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
      if (!std::isfinite(wavelengths_[i]) || wavelengths_[i] <= 0.0) {
        throw Error(Errc::NonPositiveWavelength,
                    "wavelength must be positive and finite at row " + std::to_string(i),
                    "wavelength_nm");
      }
      if (i > 0 && !(wavelengths_[i] > wavelengths_[i - 1])) {
        throw Error(Errc::NonMonotonicGrid,
                    "wavelengths must be strictly ascending (row " + std::to_string(i) + ")",
                    "wavelength_nm");
      }
    }
    for (int a = 0; a < 3; ++a) {
      const auto& col = axes_[a];
      const std::string suffix(1, axis_name(static_cast<Axis>(a)));
      if (col.n.size() != wavelengths_.size() || col.kappa.size() != wavelengths_.size()) {
        throw Error(Errc::MalformedRow, "axis column length differs from wavelength grid",
                    "n_" + suffix);
      }
      for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
        if (!std::isfinite(col.n[i]) || col.n[i] <= 0.0) {
          throw Error(Errc::NonPositiveIndex,
                      "refractive index must be positive at row " + std::to_string(i),
                      "n_" + suffix);
        }
        if (!std::isfinite(col.kappa[i]) || col.kappa[i] < 0.0) {
          throw Error(Errc::NegativeKappa,
                      "extinction coefficient must be >= 0 at row " + std::to_string(i),
                      "k_" + suffix);
        }
      }
    }
  }

  std::span<const double> wavelengths() const noexcept { return wavelengths_; }
  const Column& column(Axis a) const noexcept { return axes_[static_cast<int>(a)]; }
  std::size_t size() const noexcept { return wavelengths_.size(); }
  double min_wavelength() const noexcept { return wavelengths_.front(); }
  double max_wavelength() const noexcept { return wavelengths_.back(); }

  friend bool operator==(const DispersionTable& a, const DispersionTable& b) {
    if (a.wavelengths_ != b.wavelengths_) return false;
    for (int i = 0; i < 3; ++i) {
      if (a.axes_[i].n != b.axes_[i].n || a.axes_[i].kappa != b.axes_[i].kappa) return false;
    }
    return true;
  }

 private:
  std::vector<double> wavelengths_;
  std::array<Column, 3> axes_;
};

/// Parses the dispersion CSV format. `#` comment lines may precede the header.
inline DispersionTable load_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> wl;
  std::array<DispersionTable::Column, 3> axes;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (!header_seen) {
      if (body.empty() || body.front() == '#') continue;
      if (body != kDispersionHeader) {
        throw Error(Errc::MalformedHeader,
                    "expected header '" + std::string(kDispersionHeader) + "', got '" +
                        std::string(body) + "'");
      }
      header_seen = true;
      continue;
    }
    if (body.empty()) continue;
    const auto fields = detail::split(body);
    if (fields.size() != 7) {
      throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                          std::to_string(fields.size()));
    }
    std::array<double, 7> v{};
    for (std::size_t i = 0; i < 7; ++i) {
      const auto parsed = detail::parse_double(fields[i]);
      if (!parsed) {
        throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": non-numeric field '" +
                                            std::string(fields[i]) + "'");
      }
      v[i] = *parsed;
    }
    wl.push_back(v[0]);
    for (int a = 0; a < 3; ++a) {
      axes[a].n.push_back(v[1 + 2 * a]);
      axes[a].kappa.push_back(v[2 + 2 * a]);
    }
  }
  if (!header_seen) throw Error(Errc::MalformedHeader, "missing dispersion header");
  return DispersionTable(std::move(wl), std::move(axes));
}

inline DispersionTable load_table_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_table(in);
}

/// Writes the table in shortest round-trip form, so load_table(save_table(t)) == t.
inline void save_table(const DispersionTable& table, std::ostream& out,
                       std::span<const std::string> comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << kDispersionHeader << '\n';
  const auto wl = table.wavelengths();
  for (std::size_t i = 0; i < wl.size(); ++i) {
    out << detail::format_double(wl[i]);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      const auto& col = table.column(a);
      out << ',' << detail::format_double(col.n[i]) << ',' << detail::format_double(col.kappa[i]);
    }
    out << '\n';
  }
}

/// Piecewise-linear interpolation of n and kappa independently. Exact at grid nodes;
/// no extrapolation.
inline ComplexIndex index_at(const DispersionTable& table, Axis axis, double lambda_nm) {
  const auto wl = table.wavelengths();
  if (!(lambda_nm >= wl.front() && lambda_nm <= wl.back())) {
    throw Error(Errc::OutOfRange,
                "wavelength " + detail::format_double(lambda_nm) + " nm outside table range [" +
                    detail::format_double(wl.front()) + ", " + detail::format_double(wl.back()) + "]",
                "lambda");
  }
  const auto& col = table.column(axis);
  const auto it = std::lower_bound(wl.begin(), wl.end(), lambda_nm);
  const auto hi = static_cast<std::size_t>(it - wl.begin());
  if (*it == lambda_nm) return {col.n[hi], col.kappa[hi]};

  const std::size_t lo = hi - 1;
  const double t = (lambda_nm - wl[lo]) / (wl[hi] - wl[lo]);
  const auto lerp = [t](double a, double b) { return a + t * (b - a); };
  return {lerp(col.n[lo], col.n[hi]), lerp(col.kappa[lo], col.kappa[hi])};
}

/// 2*pi*(n + i*kappa)/lambda in rad/nm.
inline std::complex<double> complex_wavenumber(const ComplexIndex& index, double lambda_nm) {
  if (!(lambda_nm > 0.0)) {
    throw Error(Errc::NonPositiveWavelength, "wavelength must be positive", "lambda");
  }
  return 2.0 * std::numbers::pi * index.value() / lambda_nm;
}

}  // namespace fibspdc
