#include "loopyspectra/density_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "loopyspectra/errors.hpp"

namespace loopyspectra {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& field, const std::string& path,
                    std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(Errc::malformed_csv, path + ": line " + std::to_string(line_no) +
                                  ": not a number: '" + field + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Median adjacent spacing of a strictly ascending grid.
double grid_spacing(const std::vector<double>& x) {
  std::vector<double> gaps(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) gaps[i] = x[i + 1] - x[i];
  std::sort(gaps.begin(), gaps.end());
  return gaps[gaps.size() / 2];
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y,
                   double xt) {
  auto it = std::upper_bound(x.begin(), x.end(), xt);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = (xt - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

void check_table(const DensityTable& t, const char* which) {
  if (t.x.size() != t.rho.size() || t.x.size() < 2) {
    fail(Errc::invalid_argument,
         std::string("compare: density ") + which + " needs at least two rows");
  }
  for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
    if (!(t.x[i] < t.x[i + 1])) {
      fail(Errc::invalid_argument, std::string("compare: density ") + which +
                                       " grid is not strictly ascending");
    }
  }
}

}  // namespace

DensityTable to_table(const SpectrumResult& result) {
  DensityTable t;
  t.x = result.grid;
  t.rho = result.rho;
  t.converged = result.converged;
  t.iterations = result.iterations;
  return t;
}

void save_density_csv(const std::string& path, const DensityTable& table) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  out << "x,rho,converged,iterations\n";
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    const int conv = i < table.converged.size() ? table.converged[i] : 1;
    const std::int64_t iters =
        i < table.iterations.size() ? table.iterations[i] : 0;
    out << fmt12(table.x[i]) << ',' << fmt12(table.rho[i]) << ',' << conv
        << ',' << iters << '\n';
  }
  if (!out.good()) fail(Errc::io_error, "write failed on " + path);
}

DensityTable load_density_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    fail(Errc::malformed_csv, path + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,rho,converged,iterations" && line != "x,rho") {
    fail(Errc::malformed_csv, path + ": unexpected header '" + line + "'");
  }

  DensityTable t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 2 && fields.size() != 4) {
      fail(Errc::malformed_csv, path + ": line " + std::to_string(line_no) +
                                    ": expected 2 or 4 fields, got " +
                                    std::to_string(fields.size()));
    }
    t.x.push_back(parse_number(fields[0], path, line_no));
    t.rho.push_back(parse_number(fields[1], path, line_no));
    if (fields.size() == 4) {
      t.converged.push_back(
          parse_number(fields[2], path, line_no) != 0.0 ? 1 : 0);
      t.iterations.push_back(static_cast<std::int64_t>(
          parse_number(fields[3], path, line_no)));
    } else {
      t.converged.push_back(1);
      t.iterations.push_back(0);
    }
  }
  if (t.x.size() < 2) {
    fail(Errc::malformed_csv, path + ": need at least two data rows");
  }
  for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
    if (!(t.x[i] < t.x[i + 1])) {
      fail(Errc::malformed_csv,
           path + ": grid is not strictly ascending at row " +
               std::to_string(i + 2));
    }
  }
  return t;
}

void save_eigenvalues(const std::string& path,
                      const std::vector<double>& eigenvalues) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  for (const double lambda : eigenvalues) out << fmt12(lambda) << '\n';
  if (!out.good()) fail(Errc::io_error, "write failed on " + path);
}

std::vector<double> load_eigenvalues(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::vector<double> eigs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    eigs.push_back(parse_number(line, path, line_no));
  }
  return eigs;
}

void save_peaks_json(const std::string& path, const PeakWeightReport& report) {
  nlohmann::json j;
  j["locations"] = report.locations;
  j["weights"] = report.weights;
  j["weight_uncertainty"] = report.uncertainty;
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out.good()) fail(Errc::io_error, "write failed on " + path);
}

PeakWeightReport load_peaks_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
  PeakWeightReport rep;
  try {
    const auto loc = j.at("locations");
    const auto wts = j.at("weights");
    const auto unc = j.at("weight_uncertainty");
    if (loc.size() != 2 || wts.size() != 2 || unc.size() != 2) {
      fail(Errc::parse_error, path + ": expected two peaks");
    }
    for (int p = 0; p < 2; ++p) {
      rep.locations[p] = loc.at(p).get<double>();
      rep.weights[p] = wts.at(p).get<double>();
      rep.uncertainty[p] = unc.at(p).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
  return rep;
}

CompareReport compare_densities(const DensityTable& a, const DensityTable& b,
                                CompareMetric metric) {
  check_table(a, "A");
  check_table(b, "B");
  const double lo = std::max(a.x.front(), b.x.front());
  const double hi = std::min(a.x.back(), b.x.back());
  const double dx = std::min(grid_spacing(a.x), grid_spacing(b.x));
  if (!(hi - lo >= dx)) {
    fail(Errc::disjoint_grids,
         "densities share no usable grid interval (overlap [" + fmt12(lo) +
             ", " + fmt12(hi) + "])");
  }
  const std::int64_t points =
      static_cast<std::int64_t>(std::floor((hi - lo) / dx + 1e-9)) + 1;

  CompareReport rep;
  rep.metric = metric;
  rep.grid_lo = lo;
  rep.grid_hi = hi;
  rep.dx = dx;
  rep.points = points;
  double l1 = 0.0;
  double linf = 0.0;
  for (std::int64_t i = 0; i < points; ++i) {
    const double xt = lo + dx * static_cast<double>(i);
    const double diff = std::abs(interpolate(a.x, a.rho, xt) -
                                 interpolate(b.x, b.rho, xt));
    const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    l1 += w * diff;
    linf = std::max(linf, diff);
  }
  rep.value = metric == CompareMetric::l1 ? l1 * dx : linf;
  return rep;
}

}  // namespace loopyspectra
