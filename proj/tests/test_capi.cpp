// Exercises the C interface end to end through the shared library surface:
// status mapping, object lifetimes, and numeric agreement with known values.
#include "loopyspectra.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

// Loads a small network from inline JSON through the C API.
ls_network* load_inline(const std::string& json, const std::string& name) {
  const auto path = temp_file(name);
  write_file(path, json);
  ls_network* net = nullptr;
  REQUIRE(ls_network_load(path.string().c_str(), &net) == LS_OK);
  std::filesystem::remove(path);
  return net;
}

const char* kTriangleJson =
    R"({"n": 3, "motifs": [{"kind": "triangle", "nodes": [0, 1, 2]}]})";
const char* kEdgeJson =
    R"({"n": 2, "motifs": [{"kind": "edge", "nodes": [0, 1]}]})";

}  // namespace

TEST_CASE("status names are stable identifiers") {
  CHECK(std::strcmp(ls_status_name(LS_OK), "ok") == 0);
  CHECK(std::strcmp(ls_status_name(LS_MALFORMED_CSV), "malformed_csv") == 0);
  CHECK(std::strcmp(ls_status_name(LS_NOT_MULTIPLE_OF_SIX),
                    "not_multiple_of_six") == 0);
  CHECK(std::strcmp(ls_status_name(LS_INTERNAL), "internal") == 0);
  CHECK(std::strcmp(ls_status_name(static_cast<ls_status>(999)), "unknown") ==
        0);
}

TEST_CASE("networks generate, save, load, and report shape") {
  ls_network* net = nullptr;
  REQUIRE(ls_generate_regular_et(60, 17, &net) == LS_OK);
  CHECK(ls_network_nodes(net) == 60);
  CHECK(ls_network_motifs(net) == 60 / 2 + 60 / 3);

  std::vector<int64_t> deg(60);
  REQUIRE(ls_network_degrees(net, deg.data()) == LS_OK);
  for (const int64_t d : deg) CHECK(d == 3);

  const auto path = temp_file("ls_capi_net.json");
  REQUIRE(ls_network_save(net, path.string().c_str()) == LS_OK);
  ls_network* back = nullptr;
  REQUIRE(ls_network_load(path.string().c_str(), &back) == LS_OK);
  CHECK(ls_network_nodes(back) == 60);
  CHECK(ls_network_motifs(back) == ls_network_motifs(net));
  ls_network_free(back);
  ls_network_free(net);
  std::filesystem::remove(path);
}

TEST_CASE("generator failures map onto status codes with messages") {
  ls_network* net = nullptr;
  CHECK(ls_generate_regular_et(10, 1, &net) == LS_NOT_MULTIPLE_OF_SIX);
  CHECK(net == nullptr);
  CHECK(std::strlen(ls_last_error()) > 0);

  const std::vector<int64_t> odd = {3, 3, 3};  // degree sum 9
  CHECK(ls_generate_config_model(odd.data(), 3, 1, &net) ==
        LS_ODD_DEGREE_SUM);
  CHECK(net == nullptr);

  CHECK(ls_network_load("/nonexistent/net.json", &net) == LS_IO_ERROR);
  CHECK(ls_generate_regular_et(60, 1, nullptr) == LS_INVALID_ARGUMENT);
}

TEST_CASE("solve options default sensibly") {
  ls_solve_options opts;
  ls_solve_options_init(&opts);
  CHECK(opts.tol == 1e-10);
  CHECK(opts.max_iter == 100000);
  CHECK(opts.damping == 0.0);
  CHECK(opts.warm_start == 1);
}

TEST_CASE("message passing and diagonalization agree on a motif tree") {
  const std::string fixture = std::string(LS_TEST_DATA_DIR) +
                              "/mixed_motif_tree.json";
  ls_network* net = nullptr;
  REQUIRE(ls_network_load(fixture.c_str(), &net) == LS_OK);

  // Tabulate the smoothed eigenvalue density at histogram bin centers, then
  // run message passing on the same grid.  On a motif tree both routes give
  // the instance density, so they agree to solver tolerance.
  ls_density* diag = nullptr;
  double* eigs = nullptr;
  int64_t n_eigs = 0;
  REQUIRE(ls_spectrum_diag(net, 0.1, 0.3, &diag, &eigs, &n_eigs) == LS_OK);
  CHECK(n_eigs == ls_network_nodes(net));
  for (int64_t i = 0; i + 1 < n_eigs; ++i) CHECK(eigs[i] <= eigs[i + 1]);
  ls_buffer_free(eigs);
  const int64_t bins = ls_density_size(diag);
  REQUIRE(bins > 10);
  double lo = 0.0, hi = 0.0;
  REQUIRE(ls_density_row(diag, 0, &lo, nullptr, nullptr, nullptr) == LS_OK);
  REQUIRE(ls_density_row(diag, bins - 1, &hi, nullptr, nullptr, nullptr) ==
          LS_OK);

  ls_density* mp = nullptr;
  REQUIRE(ls_spectrum_mp(net, lo, hi, 0.1, 0.3, nullptr, &mp) == LS_OK);
  REQUIRE(ls_density_size(mp) == bins);

  double value = 0.0;
  REQUIRE(ls_compare_densities(mp, diag, 0, &value) == LS_OK);
  CHECK(value < 1e-6);
  REQUIRE(ls_compare_densities(mp, diag, 1, &value) == LS_OK);
  CHECK(value < 1e-6);

  // Every grid point of the scan converged.
  for (int64_t i = 0; i < bins; ++i) {
    int conv = 0;
    int64_t iters = -1;
    double rho = -1.0;
    REQUIRE(ls_density_row(mp, i, nullptr, &rho, &conv, &iters) == LS_OK);
    CHECK(conv == 1);
    CHECK(iters > 0);
    CHECK(rho > 0.0);
  }

  ls_density_free(mp);
  ls_density_free(diag);
  ls_network_free(net);
}

TEST_CASE("closed form exact values through the C surface") {
  double edges[4];
  REQUIRE(ls_regular_band_edges(edges) == LS_OK);
  CHECK(std::abs(edges[0] - -1.9651) < 1e-3);
  CHECK(std::abs(edges[1] - -0.1494) < 1e-3);
  CHECK(std::abs(edges[2] - 1.1494) < 1e-3);
  CHECK(std::abs(edges[3] - 2.9651) < 1e-3);

  ls_density* exact = nullptr;
  REQUIRE(ls_spectrum_exact_regular(2.0, 2.0, 0.5, 0.0, &exact) == LS_OK);
  REQUIRE(ls_density_size(exact) == 1);
  double rho = 0.0;
  REQUIRE(ls_density_row(exact, 0, nullptr, &rho, nullptr, nullptr) == LS_OK);
  CHECK(std::abs(rho - 1.5 * std::sqrt(7.0) / (8.0 * M_PI)) < 1e-12);
  ls_density_free(exact);

  const double etas[] = {3e-3, 2e-3, 1e-3, 5e-4};
  double locations[2], weights[2], uncertainty[2];
  REQUIRE(ls_regular_peak_weights(etas, 4, locations, weights, uncertainty) ==
          LS_OK);
  CHECK(locations[0] == -2.0);
  CHECK(locations[1] == 0.0);
  for (int p = 0; p < 2; ++p) {
    CHECK(std::abs(weights[p] - 1.0 / 6.0) < 1e-4);
    CHECK(uncertainty[p] < 1e-3);
  }

  const double coarse[] = {0.5, 0.4, 0.3};
  CHECK(ls_regular_peak_weights(coarse, 3, locations, weights, uncertainty) ==
        LS_EXTRAPOLATION_FAILED);

  const auto peaks_path = temp_file("ls_capi_peaks.json");
  REQUIRE(ls_regular_peaks_save(etas, 4, peaks_path.string().c_str()) ==
          LS_OK);
  std::ifstream in(peaks_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"locations\"") != std::string::npos);
  CHECK(text.find("\"weight_uncertainty\"") != std::string::npos);
  std::filesystem::remove(peaks_path);
}

TEST_CASE("eigenvalues and moments of a triangle") {
  ls_network* k3 = load_inline(kTriangleJson, "ls_capi_k3.json");

  double* eigs = nullptr;
  int64_t count = 0;
  REQUIRE(ls_eigenvalues(k3, 0, &eigs, &count) == LS_OK);
  REQUIRE(count == 3);
  CHECK(std::abs(eigs[0] - -1.0) < 1e-10);
  CHECK(std::abs(eigs[1] - -1.0) < 1e-10);
  CHECK(std::abs(eigs[2] - 2.0) < 1e-10);
  ls_buffer_free(eigs);

  double m[5];
  REQUIRE(ls_trace_moments(k3, 4, m) == LS_OK);
  CHECK(m[0] == 1.0);
  CHECK(std::abs(m[1]) < 1e-15);
  CHECK(std::abs(m[2] - 2.0) < 1e-13);
  CHECK(std::abs(m[3] - 2.0) < 1e-13);
  CHECK(std::abs(m[4] - 6.0) < 1e-13);

  int64_t walks = 0;
  for (int r = 2; r <= 5; ++r) {
    REQUIRE(ls_count_excursions(k3, 0, 0, r, &walks) == LS_OK);
    CHECK(walks == 2);
  }
  CHECK(ls_count_excursions(k3, 0, 0, 13, &walks) == LS_TOO_DEEP);
  CHECK(ls_count_excursions(k3, 0, 5, 4, &walks) == LS_INVALID_ARGUMENT);

  ls_network_free(k3);

  ls_network* edge = load_inline(kEdgeJson, "ls_capi_edge.json");
  double resid = -1.0;
  REQUIRE(ls_series_check(edge, 0, 0, 10.0, 0.0, 8, &resid) == LS_OK);
  CHECK(resid < 1e-8);
  CHECK(ls_series_check(edge, 0, 0, 1.5, 0.0, 8, &resid) ==
        LS_INVALID_ARGUMENT);
  ls_network_free(edge);
}

TEST_CASE("eigenvalue cap maps to too_large") {
  ls_network* net = nullptr;
  REQUIRE(ls_generate_regular_et(60, 23, &net) == LS_OK);
  double* eigs = nullptr;
  int64_t count = 0;
  CHECK(ls_eigenvalues(net, 50, &eigs, &count) == LS_TOO_LARGE);
  CHECK(eigs == nullptr);
  ls_network_free(net);
}

TEST_CASE("density tables round-trip through CSV via the C surface") {
  ls_density* exact = nullptr;
  REQUIRE(ls_spectrum_exact_regular(-4.0, 4.0, 0.25, 0.05, &exact) == LS_OK);
  const auto path = temp_file("ls_capi_density.csv");
  REQUIRE(ls_density_save_csv(exact, path.string().c_str()) == LS_OK);

  ls_density* back = nullptr;
  REQUIRE(ls_density_load_csv(path.string().c_str(), &back) == LS_OK);
  REQUIRE(ls_density_size(back) == ls_density_size(exact));
  double value = -1.0;
  REQUIRE(ls_compare_densities(exact, back, 1, &value) == LS_OK);
  CHECK(value < 1e-11);

  CHECK(ls_density_load_csv("/nonexistent/density.csv", &back) ==
        LS_IO_ERROR);
  double x = 0.0;
  CHECK(ls_density_row(exact, ls_density_size(exact), &x, nullptr, nullptr,
                       nullptr) == LS_INVALID_ARGUMENT);

  ls_density_free(back);
  ls_density_free(exact);
  std::filesystem::remove(path);
}

TEST_CASE("comparing non-overlapping densities reports disjoint grids") {
  ls_density* a = nullptr;
  ls_density* b = nullptr;
  REQUIRE(ls_spectrum_exact_regular(-4.0, -3.0, 0.1, 0.1, &a) == LS_OK);
  REQUIRE(ls_spectrum_exact_regular(3.0, 4.0, 0.1, 0.1, &b) == LS_OK);
  double value = 0.0;
  CHECK(ls_compare_densities(a, b, 0, &value) == LS_DISJOINT_GRIDS);
  CHECK(std::strlen(ls_last_error()) > 0);
  ls_density_free(a);
  ls_density_free(b);
}
