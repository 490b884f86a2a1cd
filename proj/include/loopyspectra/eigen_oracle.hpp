#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "loopyspectra/graph.hpp"

namespace loopyspectra {

struct EigenReport {
  std::vector<double> eigenvalues;        // ascending, length n
  std::vector<double> histogram_edges;    // bin boundaries, length bins+1
  std::vector<double> histogram_density;  // per-bin density, integrates to 1
};

// Dense symmetric eigendecomposition of the adjacency matrix (eigenvalues
// only), plus a density histogram over [min-0.5, max+0.5]. O(n^3); refuses
// networks larger than the cap.
EigenReport diagonalize(const FactorGraph& fg, std::int64_t cap = 5000,
                        double bin_width = 0.1);

// Lorentzian-broadened density (1/n) sum_i (eta/pi)/((x-lambda_i)^2 + eta^2)
// evaluated on the grid.
std::vector<double> smoothed_density(const EigenReport& report,
                                     const std::vector<double>& grid,
                                     double eta);

// Normalized traces Tr A^r / n for r = 0..r_max (r_max <= 12), computed by
// sparse matrix-vector products, independently of the eigensolver.
std::vector<double> trace_moments(const FactorGraph& fg, int r_max);

// Number of closed walks of length r that leave u by an edge of the given
// motif, return to u for the first time after exactly r steps, and arrive by
// an edge of the same motif. Brute-force enumeration; r <= 12, n <= 50.
std::int64_t count_excursions(const FactorGraph& fg, NodeId u,
                              std::size_t motif_index, int r);

// Compares the converged message mu_{u,motif}(z) against the truncated
// excursion series sum_r N_r / z^(r-1) and returns |difference|. Requires
// |z| > 2 * max degree so the series converges geometrically; z may be real.
double series_check(const FactorGraph& fg, NodeId u, std::size_t motif_index,
                    std::complex<double> z_large, int r_max);

}  // namespace loopyspectra
