#include "loopyspectra/eigen_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "loopyspectra/errors.hpp"
#include "loopyspectra/solver.hpp"

namespace loopyspectra {

namespace {

// Householder reduction of a symmetric matrix (full storage, both triangles
// kept in sync) to tridiagonal form. Destroys `a`; leaves the diagonal in d
// and the subdiagonal in e[1..n-1].
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e) {
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= l; ++k) g += a[j * n + k] * a[i * n + k];
          e[j] = g / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a[i * n + j];
          const double gj = e[j] - hh * f;
          e[j] = gj;
          for (int k = 0; k <= j; ++k) {
            const double delta = f * e[k] + gj * a[i * n + k];
            a[j * n + k] -= delta;
            if (k != j) a[k * n + j] -= delta;
          }
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
  }
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Implicit-shift QL iteration on a tridiagonal matrix; eigenvalues land in d.
// Off-diagonals are deflated either relative to their diagonal neighbors or
// below an absolute floor scaled to the matrix norm; the floor keeps large
// clusters of (near-)degenerate eigenvalues from demanding sub-denormal
// off-diagonals, and perturbs the spectrum by at most n * 1e-13 * |T|.
void ql_eigenvalues(std::vector<double>& d, std::vector<double>& e, int n) {
  if (n <= 1) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  }
  const double floor = 1e-13 * anorm;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <=
            std::max(std::numeric_limits<double>::epsilon() * dd, floor)) {
          break;
        }
      }
      if (m != l) {
        if (iter++ == 100) {
          fail(Errc::not_converged, "eigenvalue iteration exceeded its budget");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          const double t = (d[i] - g) * s + 2.0 * c * b;
          p = s * t;
          d[i + 1] = g + p;
          g = c * t - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<std::vector<NodeId>> neighbor_lists(const FactorGraph& fg) {
  const AdjacencyView av = adjacency(fg);
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(av.n));
  for (const auto& [u, v] : av.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

void check_motif_incidence(const FactorGraph& fg, NodeId u,
                           std::size_t motif_index, const char* what) {
  if (motif_index >= fg.motifs().size()) {
    fail(Errc::invalid_argument,
         std::string(what) + ": motif index " + std::to_string(motif_index) +
             " out of range");
  }
  if (fg.motifs()[motif_index].member_position(u) < 0) {
    fail(Errc::invalid_argument,
         std::string(what) + ": node " + std::to_string(u) +
             " is not a member of motif " + std::to_string(motif_index));
  }
}

}  // namespace

EigenReport diagonalize(const FactorGraph& fg, std::int64_t cap,
                        double bin_width) {
  const NodeId n64 = fg.node_count();
  if (n64 <= 0) {
    fail(Errc::invalid_argument, "diagonalize: empty network");
  }
  if (n64 > cap) {
    fail(Errc::too_large, "diagonalize: " + std::to_string(n64) +
                              " nodes exceeds the dense cap of " +
                              std::to_string(cap));
  }
  if (!(bin_width > 0.0)) {
    fail(Errc::invalid_argument, "diagonalize: bin width must be positive");
  }
  const int n = static_cast<int>(n64);

  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  const AdjacencyView av = adjacency(fg);
  for (const auto& [u, v] : av.edges) {
    a[u * n + v] += 1.0;
    a[v * n + u] += 1.0;
  }

  EigenReport rep;
  rep.eigenvalues.assign(n, 0.0);
  std::vector<double> e(n, 0.0);
  householder_tridiag(a, n, rep.eigenvalues, e);
  ql_eigenvalues(rep.eigenvalues, e, n);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());

  const double lo = rep.eigenvalues.front() - 0.5;
  const double hi = rep.eigenvalues.back() + 0.5;
  const int bins =
      std::max(1, static_cast<int>(std::ceil((hi - lo) / bin_width - 1e-12)));
  rep.histogram_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) {
    rep.histogram_edges[i] = lo + bin_width * i;
  }
  rep.histogram_density.assign(bins, 0.0);
  for (const double lambda : rep.eigenvalues) {
    int b = static_cast<int>((lambda - lo) / bin_width);
    b = std::clamp(b, 0, bins - 1);
    rep.histogram_density[b] += 1.0;
  }
  for (double& dens : rep.histogram_density) {
    dens /= static_cast<double>(n) * bin_width;
  }
  return rep;
}

std::vector<double> smoothed_density(const EigenReport& report,
                                     const std::vector<double>& grid,
                                     double eta) {
  if (!(eta > 0.0)) {
    fail(Errc::invalid_argument, "smoothed_density: eta must be positive");
  }
  if (report.eigenvalues.empty()) {
    fail(Errc::invalid_argument, "smoothed_density: no eigenvalues");
  }
  const double norm = eta / std::numbers::pi /
                      static_cast<double>(report.eigenvalues.size());
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    for (const double lambda : report.eigenvalues) {
      const double dx = grid[i] - lambda;
      sum += 1.0 / (dx * dx + eta * eta);
    }
    out[i] = norm * sum;
  }
  return out;
}

std::vector<double> trace_moments(const FactorGraph& fg, int r_max) {
  if (r_max < 0 || r_max > 12) {
    fail(Errc::invalid_argument,
         "trace_moments: order must be between 0 and 12");
  }
  const NodeId n = fg.node_count();
  if (n <= 0) {
    fail(Errc::invalid_argument, "trace_moments: empty network");
  }
  const auto adj = neighbor_lists(fg);

  std::vector<double> acc(r_max + 1, 0.0);
  acc[0] = static_cast<double>(n);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> next(static_cast<std::size_t>(n));
  for (NodeId u = 0; u < n; ++u) {
    std::fill(w.begin(), w.end(), 0.0);
    w[u] = 1.0;
    for (int r = 1; r <= r_max; ++r) {
      std::fill(next.begin(), next.end(), 0.0);
      for (NodeId v = 0; v < n; ++v) {
        const double wv = w[v];
        if (wv == 0.0) continue;
        for (const NodeId nb : adj[v]) next[nb] += wv;
      }
      w.swap(next);
      acc[r] += w[u];
    }
  }
  for (double& m : acc) m /= static_cast<double>(n);
  return acc;
}

std::int64_t count_excursions(const FactorGraph& fg, NodeId u,
                              std::size_t motif_index, int r) {
  if (r > 12) {
    fail(Errc::too_deep, "count_excursions: walk length capped at 12");
  }
  if (fg.node_count() > 50) {
    fail(Errc::too_large,
         "count_excursions: brute-force enumeration capped at 50 nodes");
  }
  check_motif_incidence(fg, u, motif_index, "count_excursions");
  if (r < 2) return 0;

  const auto adj = neighbor_lists(fg);
  const Motif& motif = fg.motifs()[motif_index];
  std::vector<char> sigma_neighbor(static_cast<std::size_t>(fg.node_count()),
                                   0);
  for (const auto& [a, b] : motif.internal_edges()) {
    const NodeId na = motif.members()[a];
    const NodeId nb = motif.members()[b];
    if (na == u) sigma_neighbor[nb] = 1;
    if (nb == u) sigma_neighbor[na] = 1;
  }

  // remaining = steps left until the walk must be back at u; interior nodes
  // never revisit u, and the final step must use one of the motif's edges.
  auto walk = [&](auto&& self, NodeId current, int remaining) -> std::int64_t {
    if (remaining == 1) return sigma_neighbor[current] ? 1 : 0;
    std::int64_t total = 0;
    for (const NodeId nb : adj[current]) {
      if (nb != u) total += self(self, nb, remaining - 1);
    }
    return total;
  };

  std::int64_t total = 0;
  for (NodeId v = 0; v < fg.node_count(); ++v) {
    if (sigma_neighbor[v]) total += walk(walk, v, r - 1);
  }
  return total;
}

double series_check(const FactorGraph& fg, NodeId u, std::size_t motif_index,
                    std::complex<double> z_large, int r_max) {
  check_motif_incidence(fg, u, motif_index, "series_check");
  if (r_max < 2 || r_max > 12) {
    fail(Errc::invalid_argument,
         "series_check: series order must be between 2 and 12");
  }
  const AdjacencyView av = adjacency(fg);
  std::int64_t max_degree = 0;
  for (const std::int64_t d : av.degrees) max_degree = std::max(max_degree, d);
  if (!(std::abs(z_large) > 2.0 * static_cast<double>(max_degree))) {
    fail(Errc::invalid_argument,
         "series_check: |z| must exceed twice the maximum degree");
  }

  // Far from the spectrum the sweep is a contraction even for real z, so
  // iterate directly instead of going through solve_at_z (which insists on
  // Im z > 0 for density work).
  Solver solver(fg);
  SolveConfig cfg;
  cfg.tol = 1e-13;
  MessageState state = solver.zero_state(z_large);
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    if (solver.sweep(state, cfg) < cfg.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    fail(Errc::not_converged, "series_check: messages did not converge");
  }
  const Complex mu = state.mu[solver.slot_of(u, motif_index)];

  Complex series = 0.0;
  for (int r = 2; r <= r_max; ++r) {
    const double n_r =
        static_cast<double>(count_excursions(fg, u, motif_index, r));
    if (n_r != 0.0) series += n_r * std::pow(z_large, 1 - r);
  }
  return std::abs(mu - series);
}

}  // namespace loopyspectra
