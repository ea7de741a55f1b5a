// Writes the shipped synthetic NbOI2-like dispersion table.
//
// The table is constructed, not measured. Two anchors are calibrated:
//  * n_y(405) - n_y(810) = 405 / (2 * 424), so a collinear y-y-y 405 -> 810 + 810 process
//    has a coherence length of 424 nm.
//  * k_y(405) = 0.5673829475 (k_y = 0 for lambda >= 800 nm), the pump extinction at which
//    the absorbing thickness optimum falls at 299 nm. With dk = a + i b the optimum solves
//    b cos(aL) + a sin(aL) = b exp(-bL); bisecting that for b at L = 299 nm gives the value
//    (kappa_s = kappa_i = 0). Tests re-derive it.

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fibspdc/dispersion.hpp"

namespace {

constexpr double kPumpNm = 405.0;
constexpr double kSignalNm = 810.0;
constexpr double kCoherenceLengthNm = 424.0;
constexpr double kPumpKappaY = 0.5673829475;
constexpr double kAbsorptionEdgeNm = 800.0;

// Cauchy model n = a + b / lambda^2
double cauchy(double a, double b, double lambda) { return a + b / (lambda * lambda); }

double edge_kappa(double kappa_at_pump, double lambda) {
  if (lambda >= kAbsorptionEdgeNm) return 0.0;
  const double s = (kAbsorptionEdgeNm - lambda) / (kAbsorptionEdgeNm - kPumpNm);
  return kappa_at_pump * s * s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_synthetic_dispersion <output.csv>\n";
    return 2;
  }
  const double delta_n = kPumpNm / (2.0 * kCoherenceLengthNm);
  const double b_y = delta_n / (1.0 / (kPumpNm * kPumpNm) - 1.0 / (kSignalNm * kSignalNm));
  const double b_x = 0.6 * b_y;
  const double b_z = 0.3 * b_y;

  std::vector<double> wl;
  std::array<fibspdc::DispersionTable::Column, 3> axes;
  for (int lambda = 350; lambda <= 1000; lambda += 5) {
    const double l = lambda;
    wl.push_back(l);
    axes[0].n.push_back(cauchy(2.05, b_x, l));
    axes[0].kappa.push_back(edge_kappa(0.35, l));
    axes[1].n.push_back(cauchy(2.20, b_y, l));
    axes[1].kappa.push_back(edge_kappa(kPumpKappaY, l));
    axes[2].n.push_back(cauchy(1.85, b_z, l));
    axes[2].kappa.push_back(edge_kappa(0.05, l));
  }
  const fibspdc::DispersionTable table(std::move(wl), std::move(axes));

  const std::vector<std::string> comments{
      "SYNTHETIC NbOI2-like dispersion table. Illustrative only, not measured material data.",
      "Convention: fields propagate as exp(+i k z), k = 2 pi (n + i k) / lambda; k >= 0 means absorption.",
      "n_y(405) - n_y(810) = 405/(2*424): coherence length 424 nm for y-polarized 405 -> 810 + 810.",
      "k_y(405) = 0.5673829475 places the absorbing thickness optimum at 299 nm (k = 0 above 800 nm).",
      "Columns: wavelength in nm, then n and extinction coefficient k per principal axis x, y, z.",
  };
  std::ofstream out(argv[1]);
  fibspdc::save_table(table, out, comments);
  return out ? 0 : 1;
}
