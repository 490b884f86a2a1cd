#include "loopyspectra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

#include "thread_pool.hpp"

namespace loopyspectra {

namespace {

// Denominator magnitudes below this are treated as singular; they indicate
// eta chosen too small or a diverging iteration rather than a usable value.
constexpr double kSingularFloor = 1e-14;

// Sweeps run on the pool only when the network is large enough for the
// phase-split to pay for its synchronization.
constexpr std::int64_t kParallelMinSlots = 4096;

std::string incidence_label(const FactorGraph& fg, NodeId u,
                            std::int64_t motif) {
  return "node " + std::to_string(u) + ", motif " + std::to_string(motif) +
         " (" + motif_kind_name(fg.motif(motif).kind()) + ")";
}

}  // namespace

Complex mu_edge(Complex g_v) { return g_v; }

Complex mu_triangle(Complex g_v, Complex g_w) {
  const Complex prod = g_v * g_w;
  const Complex denom = 1.0 - prod;
  if (std::abs(denom) <= kSingularFloor) {
    fail(Errc::divergent_series,
         "triangle excursion sum diverges: |1 - g_v*g_w| <= 1e-14");
  }
  return (2.0 * prod + g_v + g_w) / denom;
}

Complex mu_general(const Motif& motif, int u_position,
                   const std::vector<Complex>& g_values) {
  const int m = motif.size();
  if (u_position < 0 || u_position >= m) {
    fail(Errc::invalid_argument, "mu_general: member position out of range");
  }
  if (g_values.size() != static_cast<std::size_t>(m)) {
    fail(Errc::invalid_argument,
         "mu_general: need one g value per motif member");
  }

  std::vector<char> b(static_cast<std::size_t>(m) * m, 0);
  for (auto [p, q] : motif.internal_edges()) {
    b[p * m + q] = 1;
    b[q * m + p] = 1;
  }
  // A = I - G*B with the diagonal g entry at u_position zeroed.
  std::vector<Complex> a(static_cast<std::size_t>(m) * m, Complex(0.0));
  for (int i = 0; i < m; ++i) a[i * m + i] = 1.0;
  for (int i = 0; i < m; ++i) {
    if (i == u_position) continue;
    for (int j = 0; j < m; ++j) {
      if (b[i * m + j]) a[i * m + j] -= g_values[i];
    }
  }

  // Solve A y = e_u by Gaussian elimination with partial pivoting.
  std::vector<Complex> y(m, Complex(0.0));
  y[u_position] = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int row = col + 1; row < m; ++row) {
      if (std::abs(a[row * m + col]) > std::abs(a[piv * m + col])) piv = row;
    }
    if (std::abs(a[piv * m + col]) <= kSingularFloor) {
      fail(Errc::singular_motif_solve,
           "motif walk resummation matrix is singular");
    }
    if (piv != col) {
      for (int c = col; c < m; ++c) std::swap(a[piv * m + c], a[col * m + c]);
      std::swap(y[piv], y[col]);
    }
    const Complex inv = 1.0 / a[col * m + col];
    for (int row = col + 1; row < m; ++row) {
      const Complex f = a[row * m + col] * inv;
      if (f == Complex(0.0)) continue;
      for (int c = col; c < m; ++c) a[row * m + c] -= f * a[col * m + c];
      y[row] -= f * y[col];
    }
  }
  for (int row = m - 1; row >= 0; --row) {
    Complex s = y[row];
    for (int c = row + 1; c < m; ++c) s -= a[row * m + c] * y[c];
    y[row] = s / a[row * m + row];
  }

  Complex mu = 0.0;
  for (int j = 0; j < m; ++j) {
    if (b[u_position * m + j]) mu += y[j];
  }
  return mu;
}

Solver::Solver(const FactorGraph& fg) : fg_(&fg) {
  const std::int64_t motif_count = fg.motif_count();
  slot_base_.resize(motif_count);
  std::int64_t slots = 0;
  for (std::int64_t mo = 0; mo < motif_count; ++mo) {
    slot_base_[mo] = slots;
    slots += fg.motif(mo).size();
  }
  node_of_slot_.resize(slots);
  for (std::int64_t mo = 0; mo < motif_count; ++mo) {
    const Motif& motif = fg.motif(mo);
    for (int pos = 0; pos < motif.size(); ++pos) {
      node_of_slot_[slot_base_[mo] + pos] = motif.members()[pos];
    }
  }
  slots_of_node_.resize(fg.node_count());
  for (NodeId u = 0; u < fg.node_count(); ++u) {
    for (const Incidence& inc : fg.incident(u)) {
      slots_of_node_[u].push_back(slot(inc.motif, inc.member_pos));
    }
  }
  const unsigned threads = configured_thread_count();
  if (threads > 1 && slots >= kParallelMinSlots) {
    pool_ = std::make_unique<ThreadPool>(threads);
  }
}

Solver::~Solver() = default;

std::int64_t Solver::slot_of(NodeId u, std::int64_t motif) const {
  if (u < 0 || u >= fg_->node_count()) return -1;
  for (const Incidence& inc : fg_->incident(u)) {
    if (inc.motif == motif) return slot(inc.motif, inc.member_pos);
  }
  return -1;
}

MessageState Solver::zero_state(Complex z) const {
  MessageState state;
  state.z = z;
  state.mu.assign(node_of_slot_.size(), Complex(0.0));
  state.g.assign(node_of_slot_.size(), Complex(0.0));
  state.musum.assign(static_cast<std::size_t>(fg_->node_count()),
                     Complex(0.0));
  return state;
}

void Solver::check_state(const MessageState& state) const {
  if (state.mu.size() != node_of_slot_.size() ||
      state.g.size() != node_of_slot_.size() ||
      state.musum.size() != static_cast<std::size_t>(fg_->node_count())) {
    fail(Errc::invalid_argument,
         "message state does not match this network's incidence layout");
  }
}

Complex Solver::g_update(NodeId u, std::int64_t motif,
                         const MessageState& state) const {
  check_state(state);
  Complex sum = 0.0;
  bool member = false;
  for (const Incidence& inc : fg_->incident(u)) {
    if (inc.motif == motif) {
      member = true;
      continue;
    }
    sum += state.mu[slot(inc.motif, inc.member_pos)];
  }
  if (!member) {
    fail(Errc::invalid_argument, "g_update: node is not a member of motif");
  }
  const Complex denom = state.z - sum;
  if (std::abs(denom) < kSingularFloor) {
    fail(Errc::near_singular,
         "g update denominator vanished at " + incidence_label(*fg_, u, motif));
  }
  return 1.0 / denom;
}

double Solver::sweep(MessageState& state, const SolveConfig& cfg) const {
  check_state(state);
  return sweep_range(state, cfg, pool_ != nullptr);
}

double Solver::sweep_range(MessageState& state, const SolveConfig& cfg,
                           bool parallel) const {
  const double d = cfg.damping;
  const std::int64_t slots = slot_count();
  const std::int64_t motif_count = fg_->motif_count();
  const NodeId n = fg_->node_count();
  const Complex z = state.z;
  const unsigned workers = parallel ? pool_->size() : 1;

  std::vector<double> max_delta(workers, 0.0);
  std::vector<std::exception_ptr> errors(workers);

  auto run_phase = [&](const std::function<void(unsigned)>& phase) {
    if (parallel) {
      pool_->run(phase);
    } else {
      phase(0);
    }
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  };

  // Phase 1: every node->motif message from the previous mu values.  The sum
  // over the node's other motifs is the cached musum minus this slot's mu.
  run_phase([&](unsigned w) {
    auto [begin, end] = ThreadPool::chunk(slots, workers, w);
    try {
      double local = 0.0;
      for (std::int64_t s = begin; s < end; ++s) {
        const NodeId u = node_of_slot_[s];
        const Complex denom = z - (state.musum[u] - state.mu[s]);
        if (std::abs(denom) < kSingularFloor) {
          fail(Errc::near_singular, "g update denominator vanished at node " +
                                        std::to_string(u));
        }
        const Complex next = d * state.g[s] + (1.0 - d) * (1.0 / denom);
        local = std::max(local, std::abs(next - state.g[s]));
        state.g[s] = next;
      }
      max_delta[w] = std::max(max_delta[w], local);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  });

  // Phase 2: every motif->node message from the fresh g values.
  run_phase([&](unsigned w) {
    auto [begin, end] = ThreadPool::chunk(motif_count, workers, w);
    try {
      double local = 0.0;
      std::vector<Complex> g_members;
      auto apply = [&](std::int64_t s, Complex value) {
        const Complex next = d * state.mu[s] + (1.0 - d) * value;
        local = std::max(local, std::abs(next - state.mu[s]));
        state.mu[s] = next;
      };
      for (std::int64_t mo = begin; mo < end; ++mo) {
        const Motif& motif = fg_->motif(mo);
        const std::int64_t base = slot_base_[mo];
        try {
          switch (motif.kind()) {
            case MotifKind::edge:
              apply(base, mu_edge(state.g[base + 1]));
              apply(base + 1, mu_edge(state.g[base]));
              break;
            case MotifKind::triangle:
              apply(base, mu_triangle(state.g[base + 1], state.g[base + 2]));
              apply(base + 1, mu_triangle(state.g[base], state.g[base + 2]));
              apply(base + 2, mu_triangle(state.g[base], state.g[base + 1]));
              break;
            case MotifKind::cycle:
            case MotifKind::general:
              g_members.assign(state.g.begin() + base,
                               state.g.begin() + base + motif.size());
              for (int pos = 0; pos < motif.size(); ++pos) {
                apply(base + pos, mu_general(motif, pos, g_members));
              }
              break;
          }
        } catch (const Error& e) {
          throw Error(e.code(), std::string(e.what()) + " [motif " +
                                    std::to_string(mo) + "]");
        }
      }
      max_delta[w] = std::max(max_delta[w], local);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  });

  // Phase 3: refresh the per-node mu sums for the next sweep.
  run_phase([&](unsigned w) {
    auto [begin, end] = ThreadPool::chunk(n, workers, w);
    for (NodeId u = begin; u < end; ++u) {
      Complex acc = 0.0;
      for (std::int64_t s : slots_of_node_[u]) acc += state.mu[s];
      state.musum[u] = acc;
    }
  });

  return *std::max_element(max_delta.begin(), max_delta.end());
}

SolveResult Solver::solve_at_z(Complex z, const SolveConfig& cfg,
                               const MessageState* warm) const {
  if (!(z.imag() > 0.0)) {
    fail(Errc::invalid_argument,
         "evaluation requires Im z > 0 (eta strictly positive)");
  }
  if (!(cfg.tol > 0.0)) {
    fail(Errc::invalid_argument, "tol must be > 0");
  }
  if (!(cfg.damping >= 0.0 && cfg.damping < 1.0)) {
    fail(Errc::invalid_argument, "damping must lie in [0, 1)");
  }
  if (cfg.max_iter < 1) {
    fail(Errc::invalid_argument, "max_iter must be >= 1");
  }

  SolveResult res;
  if (warm != nullptr) {
    check_state(*warm);
    res.state = *warm;
    res.state.z = z;
  } else {
    res.state = zero_state(z);
  }
  for (std::int64_t it = 1; it <= cfg.max_iter; ++it) {
    double delta = 0.0;
    try {
      delta = sweep(res.state, cfg);
    } catch (const Error& e) {
      res.iterations = it;
      res.converged = false;
      res.failure = e.what();
      return res;
    }
    res.iterations = it;
    res.last_delta = delta;
    if (delta < cfg.tol) {
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

Complex Solver::spectral_density_at(const MessageState& state) const {
  check_state(state);
  const NodeId n = fg_->node_count();
  if (n <= 0) {
    fail(Errc::invalid_argument, "density of an empty network is undefined");
  }
  Complex acc = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const Complex denom = state.z - state.musum[u];
    if (std::abs(denom) < kSingularFloor) {
      fail(Errc::near_singular,
           "density denominator vanished at node " + std::to_string(u));
    }
    acc += 1.0 / denom;
  }
  return -acc / (static_cast<double>(n) * std::numbers::pi);
}

SpectrumResult density_scan(const FactorGraph& fg, double xmin, double xmax,
                            double dx, double eta, const SolveConfig& cfg) {
  if (!(dx > 0.0)) fail(Errc::invalid_argument, "dx must be > 0");
  if (!(eta > 0.0)) fail(Errc::invalid_argument, "eta must be > 0");
  if (!(xmax >= xmin)) fail(Errc::invalid_argument, "xmax must be >= xmin");

  Solver solver(fg);
  SpectrumResult out;
  out.eta = eta;
  const std::int64_t count =
      static_cast<std::int64_t>(std::floor((xmax - xmin) / dx + 1e-9)) + 1;
  out.grid.reserve(count);
  out.rho.reserve(count);
  out.converged.reserve(count);
  out.iterations.reserve(count);

  MessageState carry;
  bool have_carry = false;
  for (std::int64_t i = 0; i < count; ++i) {
    const double x = xmin + static_cast<double>(i) * dx;
    const MessageState* warm =
        (cfg.warm_start && have_carry) ? &carry : nullptr;
    SolveResult r = solver.solve_at_z(Complex(x, eta), cfg, warm);
    double rho = std::numeric_limits<double>::quiet_NaN();
    try {
      rho = solver.spectral_density_at(r.state).imag();
    } catch (const Error&) {
      // leave NaN; the point is flagged below
    }
    out.grid.push_back(x);
    out.rho.push_back(rho);
    out.converged.push_back(r.converged ? 1 : 0);
    out.iterations.push_back(r.iterations);
    if (cfg.warm_start && r.converged) {
      carry = std::move(r.state);
      have_carry = true;
    }
  }
  return out;
}

std::vector<double> moments_from_density(const SpectrumResult& result,
                                         int max_order) {
  if (max_order < 0) {
    fail(Errc::invalid_argument, "max_order must be >= 0");
  }
  const std::vector<double>& x = result.grid;
  const std::vector<double>& f = result.rho;
  if (x.size() < 2 || x.size() != f.size()) {
    fail(Errc::invalid_argument, "density grid needs at least two points");
  }

  // The grid must extend beyond the spectrum support far enough that the
  // truncated Lorentzian tails cannot skew the highest moment.
  constexpr double kSupportThreshold = 1e-3;
  double support_lo = 0.0, support_hi = 0.0;
  bool have_support = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f[i] >= kSupportThreshold) {
      if (!have_support) support_lo = x[i];
      support_hi = x[i];
      have_support = true;
    }
  }
  if (have_support) {
    const double margin = 10.0 * result.eta * static_cast<double>(max_order);
    if (support_lo - x.front() < margin - 1e-12 ||
        x.back() - support_hi < margin - 1e-12) {
      fail(Errc::grid_too_narrow,
           "grid must extend " + std::to_string(margin) +
               " beyond the detected support [" + std::to_string(support_lo) +
               ", " + std::to_string(support_hi) + "]");
    }
  }

  std::vector<double> moments(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (int r = 0; r <= max_order; ++r) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double fa = std::pow(x[i], r) * f[i];
      const double fb = std::pow(x[i + 1], r) * f[i + 1];
      acc += 0.5 * (fa + fb) * (x[i + 1] - x[i]);
    }
    moments[static_cast<std::size_t>(r)] = acc;
  }
  return moments;
}

}  // namespace loopyspectra
