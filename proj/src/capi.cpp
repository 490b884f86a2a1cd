#include "loopyspectra.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "loopyspectra/closed_form.hpp"
#include "loopyspectra/density_io.hpp"
#include "loopyspectra/eigen_oracle.hpp"
#include "loopyspectra/errors.hpp"
#include "loopyspectra/generators.hpp"
#include "loopyspectra/graph.hpp"
#include "loopyspectra/json_io.hpp"
#include "loopyspectra/solver.hpp"

using namespace loopyspectra;

struct ls_network {
  FactorGraph fg;
};

struct ls_density {
  DensityTable table;
};

namespace {

thread_local std::string g_last_error;

ls_status status_of(Errc code) {
  // Errc values map 1:1 onto the nonzero ls_status values, in order.
  return static_cast<ls_status>(static_cast<int>(code) + 1);
}

template <typename Fn>
ls_status guarded(Fn&& fn) {
  try {
    fn();
    return LS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LS_INTERNAL;
  }
}

ls_status fail_arg(const char* message) {
  g_last_error = message;
  return LS_INVALID_ARGUMENT;
}

SolveConfig to_config(const ls_solve_options* opts) {
  SolveConfig cfg;
  if (opts != nullptr) {
    cfg.tol = opts->tol;
    cfg.max_iter = opts->max_iter;
    cfg.damping = opts->damping;
    cfg.warm_start = opts->warm_start != 0;
  }
  return cfg;
}

// Same grid construction as the message-passing scan, so densities produced
// by different subcommands land on identical x values.
std::vector<double> make_grid(double xmin, double xmax, double dx) {
  if (!(dx > 0.0)) fail(Errc::invalid_argument, "dx must be > 0");
  if (!(xmax >= xmin)) fail(Errc::invalid_argument, "xmax must be >= xmin");
  const std::int64_t count =
      static_cast<std::int64_t>(std::floor((xmax - xmin) / dx + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::int64_t i = 0; i < count; ++i) {
    grid[i] = xmin + static_cast<double>(i) * dx;
  }
  return grid;
}

ls_density* wrap(DensityTable table) {
  auto* d = new ls_density;
  d->table = std::move(table);
  return d;
}

}  // namespace

extern "C" {

const char* ls_status_name(ls_status status) {
  if (status == LS_OK) return "ok";
  if (status == LS_INTERNAL) return "internal";
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(Errc::invalid_argument)) {
    return "unknown";
  }
  return errc_name(static_cast<Errc>(code));
}

const char* ls_last_error(void) { return g_last_error.c_str(); }

/* ---- networks ---------------------------------------------------------- */

ls_status ls_network_load(const char* path, ls_network** out) {
  if (path == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    auto* net = new ls_network{load_network(path)};
    *out = net;
  });
}

ls_status ls_network_save(const ls_network* net, const char* path) {
  if (net == nullptr || path == nullptr) return fail_arg("null argument");
  return guarded([&] { save_network(net->fg, path); });
}

void ls_network_free(ls_network* net) { delete net; }

int64_t ls_network_nodes(const ls_network* net) {
  return net == nullptr ? 0 : net->fg.node_count();
}

int64_t ls_network_motifs(const ls_network* net) {
  return net == nullptr ? 0 : static_cast<int64_t>(net->fg.motif_count());
}

ls_status ls_network_degrees(const ls_network* net, int64_t* out) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    const std::vector<std::int64_t> deg = degrees_of(net->fg);
    std::memcpy(out, deg.data(), deg.size() * sizeof(int64_t));
  });
}

/* ---- generators -------------------------------------------------------- */

ls_status ls_generate_regular_et(int64_t n, uint64_t seed, ls_network** out) {
  if (out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    *out = new ls_network{gen_regular_edge_triangle(n, seed)};
  });
}

ls_status ls_generate_poisson_et(int64_t n, double mean_edges,
                                 double mean_triangles, uint64_t seed,
                                 ls_network** out) {
  if (out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    *out = new ls_network{
        gen_poisson_edge_triangle(n, mean_edges, mean_triangles, seed)};
  });
}

ls_status ls_generate_config_model(const int64_t* degrees, int64_t n,
                                   uint64_t seed, ls_network** out) {
  if (degrees == nullptr || out == nullptr) return fail_arg("null argument");
  if (n <= 0) return fail_arg("degree sequence must be non-empty");
  return guarded([&] {
    const std::vector<std::int64_t> deg(degrees, degrees + n);
    *out = new ls_network{gen_configuration_model(deg, seed)};
  });
}

/* ---- message-passing spectra ------------------------------------------- */

void ls_solve_options_init(ls_solve_options* opts) {
  if (opts == nullptr) return;
  const SolveConfig cfg;
  opts->tol = cfg.tol;
  opts->max_iter = cfg.max_iter;
  opts->damping = cfg.damping;
  opts->warm_start = cfg.warm_start ? 1 : 0;
}

ls_status ls_spectrum_mp(const ls_network* net, double xmin, double xmax,
                         double dx, double eta, const ls_solve_options* opts,
                         ls_density** out) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    const SpectrumResult result =
        density_scan(net->fg, xmin, xmax, dx, eta, to_config(opts));
    *out = wrap(to_table(result));
  });
}

/* ---- closed form ------------------------------------------------------- */

ls_status ls_spectrum_exact_regular(double xmin, double xmax, double dx,
                                    double eta, ls_density** out) {
  if (out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    if (eta < 0.0) fail(Errc::invalid_argument, "eta must be >= 0");
    DensityTable t;
    t.x = make_grid(xmin, xmax, dx);
    t.rho.reserve(t.x.size());
    for (const double x : t.x) {
      const double rho =
          eta > 0.0
              ? rho_regular_complex(std::complex<double>(x, eta)).imag()
              : rho_regular_real(x);
      t.rho.push_back(rho);
    }
    t.converged.assign(t.x.size(), 1);
    t.iterations.assign(t.x.size(), 0);
    *out = wrap(std::move(t));
  });
}

ls_status ls_regular_band_edges(double out_edges[4]) {
  if (out_edges == nullptr) return fail_arg("null argument");
  const std::array<double, 4> e = band_edges();
  std::memcpy(out_edges, e.data(), sizeof(double) * 4);
  return LS_OK;
}

ls_status ls_regular_peak_weights(const double* etas, int64_t n_etas,
                                  double out_locations[2],
                                  double out_weights[2],
                                  double out_uncertainty[2]) {
  if (etas == nullptr || out_locations == nullptr || out_weights == nullptr ||
      out_uncertainty == nullptr) {
    return fail_arg("null argument");
  }
  return guarded([&] {
    const std::vector<double> seq(etas, etas + n_etas);
    const PeakWeightReport rep = peak_weights(seq);
    for (int p = 0; p < 2; ++p) {
      out_locations[p] = rep.locations[p];
      out_weights[p] = rep.weights[p];
      out_uncertainty[p] = rep.uncertainty[p];
    }
  });
}

ls_status ls_regular_peaks_save(const double* etas, int64_t n_etas,
                                const char* path) {
  if (etas == nullptr || path == nullptr) return fail_arg("null argument");
  return guarded([&] {
    const std::vector<double> seq(etas, etas + n_etas);
    save_peaks_json(path, peak_weights(seq));
  });
}

/* ---- dense diagonalization --------------------------------------------- */

ls_status ls_eigenvalues(const ls_network* net, int64_t cap, double** out,
                         int64_t* count) {
  if (net == nullptr || out == nullptr || count == nullptr) {
    return fail_arg("null argument");
  }
  return guarded([&] {
    const EigenReport rep =
        diagonalize(net->fg, cap > 0 ? cap : 5000, 0.1);
    auto* buf = new double[rep.eigenvalues.size()];
    std::memcpy(buf, rep.eigenvalues.data(),
                rep.eigenvalues.size() * sizeof(double));
    *out = buf;
    *count = static_cast<int64_t>(rep.eigenvalues.size());
  });
}

void ls_buffer_free(double* buffer) { delete[] buffer; }

ls_status ls_spectrum_diag(const ls_network* net, double bin_width, double eta,
                           ls_density** out, double** out_eigs,
                           int64_t* out_n_eigs) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  if (out_eigs != nullptr && out_n_eigs == nullptr) {
    return fail_arg("out_n_eigs must accompany out_eigs");
  }
  return guarded([&] {
    if (!(eta > 0.0)) fail(Errc::invalid_argument, "eta must be > 0");
    const EigenReport rep = diagonalize(net->fg, 5000, bin_width);
    DensityTable t;
    const std::size_t bins = rep.histogram_density.size();
    t.x.reserve(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      t.x.push_back(
          0.5 * (rep.histogram_edges[b] + rep.histogram_edges[b + 1]));
    }
    t.rho = smoothed_density(rep, t.x, eta);
    t.converged.assign(bins, 1);
    t.iterations.assign(bins, 0);
    *out = wrap(std::move(t));
    if (out_eigs != nullptr) {
      auto* buf = new double[rep.eigenvalues.size()];
      std::memcpy(buf, rep.eigenvalues.data(),
                  rep.eigenvalues.size() * sizeof(double));
      *out_eigs = buf;
      *out_n_eigs = static_cast<int64_t>(rep.eigenvalues.size());
    }
  });
}

/* ---- moments and walk checks ------------------------------------------- */

ls_status ls_trace_moments(const ls_network* net, int r_max, double* out) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    const std::vector<double> m = trace_moments(net->fg, r_max);
    std::memcpy(out, m.data(), m.size() * sizeof(double));
  });
}

ls_status ls_count_excursions(const ls_network* net, int64_t node,
                              int64_t motif_index, int r, int64_t* out) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    *out = count_excursions(net->fg, node,
                            static_cast<std::size_t>(motif_index), r);
  });
}

ls_status ls_series_check(const ls_network* net, int64_t node,
                          int64_t motif_index, double z_re, double z_im,
                          int r_max, double* out) {
  if (net == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] {
    *out = series_check(net->fg, node, static_cast<std::size_t>(motif_index),
                        std::complex<double>(z_re, z_im), r_max);
  });
}

/* ---- density tables ---------------------------------------------------- */

int64_t ls_density_size(const ls_density* density) {
  return density == nullptr ? 0
                            : static_cast<int64_t>(density->table.x.size());
}

ls_status ls_density_row(const ls_density* density, int64_t i, double* x,
                         double* rho, int* converged, int64_t* iterations) {
  if (density == nullptr) return fail_arg("null argument");
  const DensityTable& t = density->table;
  if (i < 0 || i >= static_cast<int64_t>(t.x.size())) {
    return fail_arg("row index out of range");
  }
  const std::size_t k = static_cast<std::size_t>(i);
  if (x != nullptr) *x = t.x[k];
  if (rho != nullptr) *rho = t.rho[k];
  if (converged != nullptr) {
    *converged = k < t.converged.size() ? t.converged[k] : 1;
  }
  if (iterations != nullptr) {
    *iterations = k < t.iterations.size() ? t.iterations[k] : 0;
  }
  return LS_OK;
}

ls_status ls_density_save_csv(const ls_density* density, const char* path) {
  if (density == nullptr || path == nullptr) return fail_arg("null argument");
  return guarded([&] { save_density_csv(path, density->table); });
}

ls_status ls_density_load_csv(const char* path, ls_density** out) {
  if (path == nullptr || out == nullptr) return fail_arg("null argument");
  return guarded([&] { *out = wrap(load_density_csv(path)); });
}

void ls_density_free(ls_density* density) { delete density; }

ls_status ls_compare_densities(const ls_density* a, const ls_density* b,
                               int use_linf, double* value) {
  if (a == nullptr || b == nullptr || value == nullptr) {
    return fail_arg("null argument");
  }
  return guarded([&] {
    const CompareReport rep = compare_densities(
        a->table, b->table,
        use_linf != 0 ? CompareMetric::linf : CompareMetric::l1);
    *value = rep.value;
  });
}

}  // extern "C"
