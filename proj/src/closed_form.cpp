#include "loopyspectra/closed_form.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>

#include "loopyspectra/errors.hpp"

namespace loopyspectra {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;

void require_upper_half_plane(Complex z, const char* what) {
  if (!(z.imag() > 0.0)) {
    fail(Errc::invalid_argument, std::string(what) + ": requires Im z > 0");
  }
}

// z^4 - 2z^3 - 5z^2 + 6z + 1, the discriminant of the message quadratic.
Complex discriminant(Complex z) {
  return (((z - 2.0) * z - 5.0) * z + 6.0) * z + 1.0;
}

// Both roots of z*mu^2 - (z^2 - z - 1)*mu + (z - 1) = 0, computed without
// cancellation between the linear coefficient and the square root.
std::pair<Complex, Complex> mu_roots(Complex z) {
  const Complex b = -(z * z - z - 1.0);
  const Complex c = z - 1.0;
  Complex s = std::sqrt(discriminant(z));
  if (b.real() * s.real() + b.imag() * s.imag() < 0.0) s = -s;
  const Complex q = -0.5 * (b + s);
  if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  return {q / z, c / q};
}

// 1/(mu - 1/mu), written so that mu = 0 is harmless.
Complex pole_free_strho(Complex mu) { return mu / (mu * mu - 1.0); }

}  // namespace

Complex mu_regular(Complex z) {
  require_upper_half_plane(z, "mu_regular");
  const auto [m1, m2] = mu_roots(z);
  return pole_free_strho(m1).imag() >= pole_free_strho(m2).imag() ? m1 : m2;
}

Complex rho_regular_complex(Complex z) {
  require_upper_half_plane(z, "rho_regular_complex");
  const Complex b = z * z - z - 1.0;
  const Complex t = (2.0 * z - 1.0) * std::sqrt(discriminant(z));
  const Complex denom = 2.0 * kPi * ((((z - 2.0) * z - 5.0) * z + 6.0) * z);
  const Complex plus = (b + t) / denom;
  const Complex minus = (b - t) / denom;
  return plus.imag() >= minus.imag() ? plus : minus;
}

double rho_regular_real(double x) {
  const double y = x - 0.5;
  const double t = y * y - 3.25;
  const double rad = 8.0 - t * t;
  if (rad <= 0.0) return 0.0;
  return std::abs(y) * std::sqrt(rad) / ((9.0 - t * t) * kPi);
}

std::array<double, 4> band_edges() {
  const double lo = std::sqrt(13.0 - 8.0 * std::numbers::sqrt2);
  const double hi = std::sqrt(13.0 + 8.0 * std::numbers::sqrt2);
  return {0.5 * (1.0 - hi), 0.5 * (1.0 - lo), 0.5 * (1.0 + lo),
          0.5 * (1.0 + hi)};
}

PeakWeightReport peak_weights(const std::vector<double>& etas) {
  if (etas.size() < 3) {
    fail(Errc::invalid_argument, "peak_weights: need at least three eta values");
  }
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) {
      fail(Errc::invalid_argument, "peak_weights: eta values must be positive");
    }
    if (i > 0 && !(etas[i] < etas[i - 1])) {
      fail(Errc::invalid_argument,
           "peak_weights: eta values must be strictly descending");
    }
  }

  PeakWeightReport rep;
  rep.locations = {-2.0, 0.0};
  const std::size_t m = etas.size();
  for (int p = 0; p < 2; ++p) {
    const double x0 = rep.locations[p];
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = kPi * etas[i] * rho_regular_complex(Complex(x0, etas[i])).imag();
    }

    // The smooth background is real-analytic at the peak location, so the
    // finite-eta estimate behaves as w0 + c*eta^2; fit that model by least
    // squares over the whole sequence.
    double s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double u = etas[i] * etas[i];
      s1 += u;
      s2 += u * u;
      t0 += w[i];
      t1 += w[i] * u;
    }
    const double s0 = static_cast<double>(m);
    const double det = s0 * s2 - s1 * s1;
    const double w0_fit = (t0 * s2 - t1 * s1) / det;
    const double slope = (s0 * t1 - s1 * t0) / det;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double u = etas[i] * etas[i];
      const double r = w[i] - w0_fit - slope * u;
      rss += r * r;
    }
    const double rms = std::sqrt(rss / static_cast<double>(m));

    // Independent two-point extrapolations from the coarse and fine ends of
    // the sequence; their spread exposes drift the least-squares fit hides.
    auto two_point = [&](std::size_t i, std::size_t j) {
      const double ui = etas[i] * etas[i];
      const double uj = etas[j] * etas[j];
      return (w[j] * ui - w[i] * uj) / (ui - uj);
    };
    const double w0_head = two_point(0, 1);
    const double w0_tail = two_point(m - 2, m - 1);

    const double unc =
        std::max(std::abs(w0_head - w0_tail), std::abs(w0_fit - w0_tail)) + rms;
    if (!(std::isfinite(w0_tail) && std::isfinite(unc)) ||
        unc > std::max(0.05 * std::abs(w0_tail), 1e-3)) {
      fail(Errc::extrapolation_failed,
           "peak_weights: estimates did not stabilize over the eta sequence");
    }
    rep.weights[p] = w0_tail;
    rep.uncertainty[p] = unc;
  }
  return rep;
}

}  // namespace loopyspectra
