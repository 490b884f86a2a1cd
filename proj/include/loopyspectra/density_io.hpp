#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopyspectra/closed_form.hpp"
#include "loopyspectra/solver.hpp"

namespace loopyspectra {

// One density curve as stored in CSV: header `x,rho,converged,iterations`,
// one row per grid point, 12 significant digits, strictly ascending x.
struct DensityTable {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<char> converged;
  std::vector<std::int64_t> iterations;
};

DensityTable to_table(const SpectrumResult& result);

void save_density_csv(const std::string& path, const DensityTable& table);

// Accepts the full four-column layout or a bare x,rho one; rejects missing
// headers, non-numeric fields, short rows, and non-ascending grids.
DensityTable load_density_csv(const std::string& path);

// One eigenvalue per line, 12 significant digits.
void save_eigenvalues(const std::string& path,
                      const std::vector<double>& eigenvalues);
std::vector<double> load_eigenvalues(const std::string& path);

void save_peaks_json(const std::string& path, const PeakWeightReport& report);
PeakWeightReport load_peaks_json(const std::string& path);

enum class CompareMetric { l1, linf };

struct CompareReport {
  CompareMetric metric = CompareMetric::l1;
  double value = 0.0;
  double grid_lo = 0.0;   // common grid bounds
  double grid_hi = 0.0;
  double dx = 0.0;        // common grid spacing (finer of the two inputs)
  std::int64_t points = 0;
};

// Interpolates both curves linearly onto the intersection of their grids,
// sampled at the finer input spacing, and reports L1 (trapezoid integral of
// |difference|) or Linf (max |difference|).
CompareReport compare_densities(const DensityTable& a, const DensityTable& b,
                                CompareMetric metric);

}  // namespace loopyspectra
