#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "loopyspectra/graph.hpp"

namespace loopyspectra {

using Complex = std::complex<double>;

struct SolveConfig {
  double tol = 1e-10;            // max-abs message change for convergence
  std::int64_t max_iter = 100000;
  double damping = 0.0;          // in [0,1): kept fraction of the old message
  bool warm_start = true;        // scans reuse the previous point's messages
};

// All messages at one complex argument z.  Values are stored motif-major: the
// slot of (motif sigma, member position p) is the running size offset of
// sigma plus p.  mu[slot] is the motif->node message for that incidence,
// g[slot] the node->motif message, and musum[u] caches the sum of mu over
// the slots of node u (kept consistent by the solver).
struct MessageState {
  Complex z;
  std::vector<Complex> mu;
  std::vector<Complex> g;
  std::vector<Complex> musum;
};

struct SolveResult {
  MessageState state;
  bool converged = false;
  std::int64_t iterations = 0;
  double last_delta = 0.0;
  std::string failure;  // non-empty when iteration aborted on a solver error
};

struct SpectrumResult {
  std::vector<double> grid;  // strictly ascending x values
  std::vector<double> rho;   // Im rho(x + i eta); NaN where evaluation failed
  double eta = 0.0;
  std::vector<char> converged;
  std::vector<std::int64_t> iterations;
};

// Motif->node message of an edge motif: the single excursion alternates to
// the other member and back, so the message equals that member's g.
Complex mu_edge(Complex g_v);

// Motif->node message of a triangle with other-member messages g_v, g_w;
// the geometric excursion sum resums to (2 g_v g_w + g_v + g_w)/(1 - g_v g_w).
// Fails with divergent_series when |1 - g_v g_w| <= 1e-14.
Complex mu_triangle(Complex g_v, Complex g_w);

// Motif->node message for an arbitrary motif: with B the motif's internal
// adjacency matrix and G the diagonal matrix of member g values with the
// entry at u_position zeroed, returns [B (I - G B)^{-1}] at (u_position,
// u_position).  This resums the excursion series exactly; the zeroed entry
// keeps the walks away from u strictly between their first and last steps.
// g_values are indexed by member position; the value at u_position is unused.
Complex mu_general(const Motif& motif, int u_position,
                   const std::vector<Complex>& g_values);

class ThreadPool;

// Message-passing engine bound to one factor graph.  Immutable layout;
// solve calls do not mutate the solver and may run concurrently only with
// distinct MessageStates.
class Solver {
 public:
  explicit Solver(const FactorGraph& fg);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const FactorGraph& graph() const { return *fg_; }
  std::int64_t slot_count() const {
    return static_cast<std::int64_t>(node_of_slot_.size());
  }
  std::int64_t slot(std::int64_t motif, int member_pos) const {
    return slot_base_[motif] + member_pos;
  }
  // Slot of the (u, motif) incidence, or -1 when u is not a member.
  std::int64_t slot_of(NodeId u, std::int64_t motif) const;

  MessageState zero_state(Complex z) const;

  // Node->motif message 1/(z - sum of mu over the node's other motifs),
  // evaluated from the mu values in `state`.  Fails with near_singular when
  // the denominator magnitude drops below 1e-14.
  Complex g_update(NodeId u, std::int64_t motif,
                   const MessageState& state) const;

  // One synchronous sweep in place: every g from the old mu values, then
  // every mu from the new g values; with damping d each stored message is
  // d*old + (1-d)*new.  Returns the max absolute change over all messages.
  double sweep(MessageState& state, const SolveConfig& cfg) const;

  // Iterates sweeps until the change falls below cfg.tol or max_iter is
  // reached.  Solver errors (near-singular denominators, diverging excursion
  // sums) abort the iteration and are reported via `failure` rather than
  // thrown, so scans can flag the point and continue.  Requires Im z > 0.
  SolveResult solve_at_z(Complex z, const SolveConfig& cfg,
                         const MessageState* warm = nullptr) const;

  // Complex spectral density -(1/(n pi)) sum_u 1/(z - musum_u); its
  // imaginary part is the eta-broadened real density.
  Complex spectral_density_at(const MessageState& state) const;

 private:
  double sweep_range(MessageState& state, const SolveConfig& cfg,
                     bool parallel) const;
  void check_state(const MessageState& state) const;

  const FactorGraph* fg_;
  std::vector<std::int64_t> slot_base_;   // per motif
  std::vector<NodeId> node_of_slot_;
  std::vector<std::vector<std::int64_t>> slots_of_node_;
  std::unique_ptr<ThreadPool> pool_;
};

// Scans Im rho(x + i eta) over the inclusive grid [xmin, xmax] with spacing
// dx.  With cfg.warm_start each point starts from the last converged state;
// unconverged points are flagged and their (untrusted) density recorded.
SpectrumResult density_scan(const FactorGraph& fg, double xmin, double xmax,
                            double dx, double eta, const SolveConfig& cfg);

// Trapezoid moments m_r = integral of x^r rho(x) dx for r = 0..max_order.
// Each order is biased by O(eta) through the Lorentzian tails.  Fails with
// grid_too_narrow when the grid does not extend at least 10*eta*max_order
// beyond the detected support (points with rho >= 1e-3).
std::vector<double> moments_from_density(const SpectrumResult& result,
                                         int max_order);

}  // namespace loopyspectra
