// Command-line front end.  All numerical work goes through the C interface
// of the shared library; this file only parses arguments, moves bytes, and
// maps failures onto exit codes:
//   0  success
//   1  a threshold or convergence check failed (requested output still
//      written where possible)
//   2  usage error or bad input
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopyspectra.h"

namespace {

int fail_status(ls_status status) {
  std::fprintf(stderr, "error: %s (%s)\n", ls_last_error(),
               ls_status_name(status));
  return 2;
}

int usage_error(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return 2;
}

// One integer per line; blank lines are ignored.
bool read_degrees_file(const std::string& path,
                       std::vector<int64_t>* degrees) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    char* end = nullptr;
    const long long v = std::strtoll(line.c_str(), &end, 10);
    if (end == line.c_str() || *end != '\0') return false;
    degrees->push_back(v);
  }
  return true;
}

bool write_eigenvalue_file(const std::string& path, const double* eigs,
                           int64_t count) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) return false;
  for (int64_t i = 0; i < count; ++i) {
    std::fprintf(f, "%.12g\n", eigs[i]);
  }
  const bool ok = std::ferror(f) == 0;
  std::fclose(f);
  return ok;
}

struct GenerateArgs {
  std::string model;
  int64_t n = 0;
  double mean_edges = -1.0;
  double mean_triangles = -1.0;
  std::string degrees_file;
  uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  ls_network* net = nullptr;
  ls_status st = LS_OK;
  if (a.model == "regular-et") {
    if (a.n <= 0) return usage_error("--model regular-et requires --n");
    st = ls_generate_regular_et(a.n, a.seed, &net);
  } else if (a.model == "poisson-et") {
    if (a.n <= 0) return usage_error("--model poisson-et requires --n");
    if (a.mean_edges < 0.0 || a.mean_triangles < 0.0) {
      return usage_error(
          "--model poisson-et requires --mean-edges and --mean-triangles");
    }
    st = ls_generate_poisson_et(a.n, a.mean_edges, a.mean_triangles, a.seed,
                                &net);
  } else {  // config-model, guaranteed by the option check
    if (a.degrees_file.empty()) {
      return usage_error("--model config-model requires --degrees-file");
    }
    std::vector<int64_t> degrees;
    if (!read_degrees_file(a.degrees_file, &degrees) || degrees.empty()) {
      return usage_error("cannot read degree sequence from " + a.degrees_file);
    }
    st = ls_generate_config_model(degrees.data(),
                                  static_cast<int64_t>(degrees.size()), a.seed,
                                  &net);
  }
  if (st != LS_OK) return fail_status(st);
  st = ls_network_save(net, a.out.c_str());
  ls_network_free(net);
  if (st != LS_OK) return fail_status(st);
  return 0;
}

struct MpArgs {
  std::string net;
  double xmin = 0.0, xmax = 0.0, dx = 0.0;
  double eta = 0.01;
  double tol = 1e-10;
  int64_t max_iter = 100000;
  double damping = 0.0;
  bool no_warm_start = false;
  std::string out;
};

int run_mp(const MpArgs& a) {
  ls_network* net = nullptr;
  ls_status st = ls_network_load(a.net.c_str(), &net);
  if (st != LS_OK) return fail_status(st);

  ls_solve_options opts;
  ls_solve_options_init(&opts);
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.damping = a.damping;
  opts.warm_start = a.no_warm_start ? 0 : 1;

  ls_density* density = nullptr;
  st = ls_spectrum_mp(net, a.xmin, a.xmax, a.dx, a.eta, &opts, &density);
  ls_network_free(net);
  if (st != LS_OK) return fail_status(st);

  st = ls_density_save_csv(density, a.out.c_str());
  if (st != LS_OK) {
    ls_density_free(density);
    return fail_status(st);
  }

  int64_t stuck = 0;
  const int64_t rows = ls_density_size(density);
  for (int64_t i = 0; i < rows; ++i) {
    int converged = 1;
    ls_density_row(density, i, nullptr, nullptr, &converged, nullptr);
    if (converged == 0) ++stuck;
  }
  ls_density_free(density);
  if (stuck > 0) {
    std::fprintf(stderr,
                 "warning: %" PRId64 " of %" PRId64
                 " grid points did not converge\n",
                 stuck, rows);
    return 1;
  }
  return 0;
}

struct ExactArgs {
  double xmin = 0.0, xmax = 0.0, dx = 0.0;
  double eta = 0.0;
  std::string out;
  std::string peaks_out;
};

int run_exact_regular(const ExactArgs& a) {
  ls_density* density = nullptr;
  ls_status st = ls_spectrum_exact_regular(a.xmin, a.xmax, a.dx, a.eta,
                                           &density);
  if (st != LS_OK) return fail_status(st);
  st = ls_density_save_csv(density, a.out.c_str());
  ls_density_free(density);
  if (st != LS_OK) return fail_status(st);

  if (!a.peaks_out.empty()) {
    // Fixed eta ladder for the spike-weight extrapolation; fine enough that
    // the quadratic fit is far inside its asymptotic regime.
    const double etas[] = {3e-3, 2e-3, 1e-3, 5e-4};
    st = ls_regular_peaks_save(etas, 4, a.peaks_out.c_str());
    if (st != LS_OK) return fail_status(st);
  }
  return 0;
}

struct DiagArgs {
  std::string net;
  double bins = 0.1;
  double eta = 0.01;
  std::string out;
  std::string eigs_out;
};

int run_diag(const DiagArgs& a) {
  ls_network* net = nullptr;
  ls_status st = ls_network_load(a.net.c_str(), &net);
  if (st != LS_OK) return fail_status(st);

  ls_density* density = nullptr;
  double* eigs = nullptr;
  int64_t n_eigs = 0;
  const bool want_eigs = !a.eigs_out.empty();
  st = ls_spectrum_diag(net, a.bins, a.eta, &density,
                        want_eigs ? &eigs : nullptr,
                        want_eigs ? &n_eigs : nullptr);
  ls_network_free(net);
  if (st != LS_OK) return fail_status(st);

  st = ls_density_save_csv(density, a.out.c_str());
  ls_density_free(density);
  int rc = 0;
  if (st != LS_OK) {
    rc = fail_status(st);
  } else if (want_eigs && !write_eigenvalue_file(a.eigs_out, eigs, n_eigs)) {
    rc = usage_error("cannot write " + a.eigs_out);
  }
  if (want_eigs) ls_buffer_free(eigs);
  return rc;
}

struct CompareArgs {
  std::string a, b;
  std::string metric = "l1";
  double threshold = -1.0;
  bool has_threshold = false;
};

int run_compare(const CompareArgs& args) {
  ls_density* a = nullptr;
  ls_density* b = nullptr;
  ls_status st = ls_density_load_csv(args.a.c_str(), &a);
  if (st != LS_OK) return fail_status(st);
  st = ls_density_load_csv(args.b.c_str(), &b);
  if (st != LS_OK) {
    ls_density_free(a);
    return fail_status(st);
  }
  double value = 0.0;
  st = ls_compare_densities(a, b, args.metric == "linf" ? 1 : 0, &value);
  ls_density_free(a);
  ls_density_free(b);
  if (st != LS_OK) return fail_status(st);
  std::printf("%s %.12g\n", args.metric.c_str(), value);
  if (args.has_threshold && !(value <= args.threshold)) {
    std::fprintf(stderr, "threshold exceeded: %.12g > %.12g\n", value,
                 args.threshold);
    return 1;
  }
  return 0;
}

struct MomentsArgs {
  std::string net;
  int max_order = 12;
};

int run_moments(const MomentsArgs& a) {
  ls_network* net = nullptr;
  ls_status st = ls_network_load(a.net.c_str(), &net);
  if (st != LS_OK) return fail_status(st);
  std::vector<double> moments(static_cast<std::size_t>(a.max_order) + 1);
  st = ls_trace_moments(net, a.max_order, moments.data());
  ls_network_free(net);
  if (st != LS_OK) return fail_status(st);
  for (int r = 0; r <= a.max_order; ++r) {
    std::printf("%d %.12g\n", r, moments[static_cast<std::size_t>(r)]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral densities of networks built from small motifs"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand(
      "generate", "Draw a random motif network and write it as JSON");
  gen->add_option("--model", gen_args.model,
                  "regular-et | poisson-et | config-model")
      ->required()
      ->check(CLI::IsMember({"regular-et", "poisson-et", "config-model"}));
  gen->add_option("--n", gen_args.n, "number of nodes");
  gen->add_option("--mean-edges", gen_args.mean_edges,
                  "mean single-edge count per node (poisson-et)");
  gen->add_option("--mean-triangles", gen_args.mean_triangles,
                  "mean triangle count per node (poisson-et)");
  gen->add_option("--degrees-file", gen_args.degrees_file,
                  "degree sequence, one integer per line (config-model)");
  gen->add_option("--seed", gen_args.seed, "random seed")->required();
  gen->add_option("--out", gen_args.out, "output network JSON path")
      ->required();

  auto* spectrum =
      app.add_subcommand("spectrum", "Compute a spectral density");
  spectrum->require_subcommand(1);

  MpArgs mp_args;
  auto* mp = spectrum->add_subcommand(
      "mp", "Message passing on the motif factor graph");
  mp->add_option("--net", mp_args.net, "network JSON path")->required();
  mp->add_option("--xmin", mp_args.xmin)->required();
  mp->add_option("--xmax", mp_args.xmax)->required();
  mp->add_option("--dx", mp_args.dx, "grid spacing")->required();
  mp->add_option("--eta", mp_args.eta, "Lorentzian broadening (default 0.01)");
  mp->add_option("--tol", mp_args.tol, "convergence tolerance");
  mp->add_option("--max-iter", mp_args.max_iter, "sweep budget per point");
  mp->add_option("--damping", mp_args.damping, "damping factor in [0,1)");
  mp->add_flag("--no-warm-start", mp_args.no_warm_start,
               "reinitialize messages at every grid point");
  mp->add_option("--out", mp_args.out, "output density CSV path")->required();

  ExactArgs exact_args;
  auto* exact = spectrum->add_subcommand(
      "exact-regular",
      "Closed-form density of the regular edge+triangle model");
  exact->add_option("--xmin", exact_args.xmin)->required();
  exact->add_option("--xmax", exact_args.xmax)->required();
  exact->add_option("--dx", exact_args.dx, "grid spacing")->required();
  exact->add_option("--eta", exact_args.eta,
                    "Lorentzian broadening; 0 tabulates the band density");
  exact->add_option("--out", exact_args.out, "output density CSV path")
      ->required();
  exact->add_option("--peaks-out", exact_args.peaks_out,
                    "also write spike locations/weights as JSON");

  DiagArgs diag_args;
  auto* diag = spectrum->add_subcommand(
      "diag", "Dense diagonalization of the adjacency matrix");
  diag->add_option("--net", diag_args.net, "network JSON path")->required();
  diag->add_option("--bins", diag_args.bins,
                   "histogram bin width (default 0.1)");
  diag->add_option("--eta", diag_args.eta,
                   "Lorentzian broadening (default 0.01)");
  diag->add_option("--out", diag_args.out, "output density CSV path")
      ->required();
  diag->add_option("--eigs-out", diag_args.eigs_out,
                   "also write eigenvalues, one per line");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand(
      "compare", "Distance between two density CSV files");
  cmp->add_option("--a", cmp_args.a, "first density CSV")->required();
  cmp->add_option("--b", cmp_args.b, "second density CSV")->required();
  cmp->add_option("--metric", cmp_args.metric, "l1 | linf (default l1)")
      ->check(CLI::IsMember({"l1", "linf"}));
  auto* thr = cmp->add_option("--threshold", cmp_args.threshold,
                              "exit 1 when the distance exceeds this");

  MomentsArgs mom_args;
  auto* mom = app.add_subcommand(
      "moments", "Spectral moments tr(A^r)/n up to --max-order");
  mom->add_option("--net", mom_args.net, "network JSON path")->required();
  mom->add_option("--max-order", mom_args.max_order,
                  "largest moment order (default 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, parse errors exit 2
  }
  cmp_args.has_threshold = thr->count() > 0;

  if (gen->parsed()) return run_generate(gen_args);
  if (mp->parsed()) return run_mp(mp_args);
  if (exact->parsed()) return run_exact_regular(exact_args);
  if (diag->parsed()) return run_diag(diag_args);
  if (cmp->parsed()) return run_compare(cmp_args);
  if (mom->parsed()) return run_moments(mom_args);
  return 2;
}
