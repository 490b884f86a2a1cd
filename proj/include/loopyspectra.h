/* C interface to the loopyspectra shared library.
 *
 * Every function that can fail returns an ls_status; LS_OK is zero.  On
 * failure a human-readable message is stored per thread and can be read with
 * ls_last_error() until the next failing call on the same thread.  Objects
 * returned through ls_network** / ls_density** out-parameters are owned by
 * the caller and must be released with the matching *_free function; on
 * failure the out-parameter is left untouched.
 */
#ifndef LOOPYSPECTRA_H
#define LOOPYSPECTRA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ls_network ls_network;  /* a motif network */
typedef struct ls_density ls_density;  /* a tabulated spectral density */

typedef enum ls_status {
  LS_OK = 0,
  LS_IO_ERROR = 1,
  LS_PARSE_ERROR = 2,
  LS_OUT_OF_RANGE_NODE = 3,
  LS_MALFORMED_MOTIF = 4,
  LS_DISCONNECTED_MOTIF = 5,
  LS_NOT_MULTIPLE_OF_SIX = 6,
  LS_ODD_DEGREE_SUM = 7,
  LS_GENERATION_FAILED = 8,
  LS_TOO_LARGE = 9,
  LS_TOO_DEEP = 10,
  LS_NEAR_SINGULAR = 11,
  LS_DIVERGENT_SERIES = 12,
  LS_SINGULAR_MOTIF_SOLVE = 13,
  LS_NOT_CONVERGED = 14,
  LS_GRID_TOO_NARROW = 15,
  LS_DISJOINT_GRIDS = 16,
  LS_MALFORMED_CSV = 17,
  LS_EXTRAPOLATION_FAILED = 18,
  LS_INVALID_ARGUMENT = 19,
  LS_INTERNAL = 20
} ls_status;

/* Stable identifier for a status code, e.g. "malformed_csv". */
const char* ls_status_name(ls_status status);

/* Message from the most recent failing call on this thread ("" if none). */
const char* ls_last_error(void);

/* ---- networks ---------------------------------------------------------- */

ls_status ls_network_load(const char* path, ls_network** out);
ls_status ls_network_save(const ls_network* net, const char* path);
void ls_network_free(ls_network* net);

int64_t ls_network_nodes(const ls_network* net);
int64_t ls_network_motifs(const ls_network* net);

/* Adjacency degree of every node; `out` must hold ls_network_nodes entries. */
ls_status ls_network_degrees(const ls_network* net, int64_t* out);

/* ---- generators -------------------------------------------------------- */

/* One edge and one triangle per node (degree 3); n must be a positive
 * multiple of six. */
ls_status ls_generate_regular_et(int64_t n, uint64_t seed, ls_network** out);

/* Independent Poisson edge-stub and triangle-corner counts per node. */
ls_status ls_generate_poisson_et(int64_t n, double mean_edges,
                                 double mean_triangles, uint64_t seed,
                                 ls_network** out);

/* Configuration model over the given degree sequence (edges only). */
ls_status ls_generate_config_model(const int64_t* degrees, int64_t n,
                                   uint64_t seed, ls_network** out);

/* ---- message-passing spectra ------------------------------------------- */

typedef struct ls_solve_options {
  double tol;        /* convergence threshold on message change */
  int64_t max_iter;  /* sweep budget per grid point */
  double damping;    /* in [0,1): kept fraction of the old message */
  int warm_start;    /* nonzero: reuse messages between grid points */
} ls_solve_options;

/* Fill `opts` with the library defaults (1e-10, 100000, 0.0, warm start on). */
void ls_solve_options_init(ls_solve_options* opts);

/* Spectral density via message passing on the grid xmin, xmin+dx, ..., xmax
 * at broadening eta > 0.  `opts` may be NULL for defaults. */
ls_status ls_spectrum_mp(const ls_network* net, double xmin, double xmax,
                         double dx, double eta, const ls_solve_options* opts,
                         ls_density** out);

/* ---- closed form for the regular edge+triangle model ------------------- */

/* Band density of the regular model on the same grid.  eta > 0 evaluates the
 * Lorentzian-broadened density (comparable with ls_spectrum_mp output);
 * eta == 0 evaluates the continuous part directly on the real axis. */
ls_status ls_spectrum_exact_regular(double xmin, double xmax, double dx,
                                    double eta, ls_density** out);

/* The four spectral band boundaries, ascending. */
ls_status ls_regular_band_edges(double out_edges[4]);

/* Weights of the two spectral spikes, extrapolated from the broadened
 * density at eta values `etas[0] > etas[1] > ... > 0` (at least three). */
ls_status ls_regular_peak_weights(const double* etas, int64_t n_etas,
                                  double out_locations[2],
                                  double out_weights[2],
                                  double out_uncertainty[2]);

/* Same computation, written to `path` as
 * {"locations": [...], "weights": [...], "weight_uncertainty": [...]}. */
ls_status ls_regular_peaks_save(const double* etas, int64_t n_etas,
                                const char* path);

/* ---- dense diagonalization --------------------------------------------- */

/* All adjacency eigenvalues, ascending.  `*out` receives a buffer of
 * `*count` doubles to release with ls_buffer_free.  Refuses networks larger
 * than `cap` nodes (pass 0 for the default cap of 5000). */
ls_status ls_eigenvalues(const ls_network* net, int64_t cap, double** out,
                         int64_t* count);
void ls_buffer_free(double* buffer);

/* Eigenvalue density smoothed with Lorentzians of width eta, tabulated at
 * the centers of histogram bins of width bin_width.  When `out_eigs` is not
 * NULL the sorted eigenvalues from the same diagonalization are also
 * returned (release with ls_buffer_free). */
ls_status ls_spectrum_diag(const ls_network* net, double bin_width, double eta,
                           ls_density** out, double** out_eigs,
                           int64_t* out_n_eigs);

/* ---- moments and walk checks ------------------------------------------- */

/* Spectral moments m_r = tr(A^r)/n for r = 0..r_max (r_max <= 12); `out`
 * must hold r_max+1 entries. */
ls_status ls_trace_moments(const ls_network* net, int r_max, double* out);

/* Number of length-r closed walks that leave `node` into motif
 * `motif_index`, return to it only at step r, and re-enter through the same
 * motif.  Exact enumeration; r <= 12, at most 50 nodes. */
ls_status ls_count_excursions(const ls_network* net, int64_t node,
                              int64_t motif_index, int r, int64_t* out);

/* Residual between the solved motif->node message at z = z_re + i z_im and
 * its truncated walk series of order r_max.  Requires |z| > twice the
 * maximum degree so the series tail is controlled. */
ls_status ls_series_check(const ls_network* net, int64_t node,
                          int64_t motif_index, double z_re, double z_im,
                          int r_max, double* out);

/* ---- density tables ---------------------------------------------------- */

int64_t ls_density_size(const ls_density* density);
ls_status ls_density_row(const ls_density* density, int64_t i, double* x,
                         double* rho, int* converged, int64_t* iterations);
ls_status ls_density_save_csv(const ls_density* density, const char* path);
ls_status ls_density_load_csv(const char* path, ls_density** out);
void ls_density_free(ls_density* density);

/* L1 (use_linf == 0) or Linf distance between two densities, evaluated by
 * linear interpolation on the intersection of their grids at the finer
 * spacing.  L1 is a trapezoid integral of the absolute difference. */
ls_status ls_compare_densities(const ls_density* a, const ls_density* b,
                               int use_linf, double* value);

#ifdef __cplusplus
}
#endif

#endif /* LOOPYSPECTRA_H */
