#pragma once

#include <array>
#include <complex>
#include <vector>

namespace loopyspectra {

// Analytic spectrum of the random regular edge-triangle model in which every
// node belongs to exactly one edge motif and one triangle motif.

// Per-edge message at the homogeneous fixed point, on the physical branch of
// the quadratic (mu -> 1/z as |z| -> infinity, broadened density >= 0).
// Requires Im z > 0.
std::complex<double> mu_regular(std::complex<double> z);

// Complex spectral density on the physical branch; the imaginary part is the
// eta-broadened density at z = x + i*eta. Requires Im z > 0.
std::complex<double> rho_regular_complex(std::complex<double> z);

// Continuous (band) part of the density on the real line; zero outside the
// two bands. The delta peaks at x = -2 and x = 0 are reported separately by
// peak_weights.
double rho_regular_real(double x);

// Band boundaries (1 +- sqrt(13 +- 8*sqrt 2))/2 in ascending order.
std::array<double, 4> band_edges();

struct PeakWeightReport {
  std::array<double, 2> locations;    // {-2, 0}
  std::array<double, 2> weights;      // extrapolated delta masses
  std::array<double, 2> uncertainty;  // extrapolation error estimates
};

// Estimates the delta-peak masses as the eta -> 0 limit of
// pi * eta * Im rho(x0 + i*eta), extrapolated over the given eta sequence.
// etas must hold at least three positive, strictly descending values.
PeakWeightReport peak_weights(const std::vector<double>& etas);

}  // namespace loopyspectra
