#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "auvfl/rbf.hpp"
#include "auvfl/scenario.hpp"

namespace auvfl::sim {

// ---------------------------------------------------------------------------
// Global state layout, version 1.  The coupled system integrates as one flat
// vector:
//
//   [ chi0 (6) | per-agent (eta, nu) (6 each) |
//     per-agent (chi_hat, vec A_hat) (6 + 36 each, A_hat column-major) |
//     per-agent weights (3 * nodes each, channel columns stacked) ]
//
// Agents are 0-based here; graph node index = agent index + 1.  In
// pretrained mode the weight block is absent — frozen weights are parameters
// of the run, not state, which is what makes "zero adaptation" structural
// rather than a flag that something could forget to check.
struct Layout {
  int n_agents = 0;
  int nodes = 0;      // RBF nodes per channel
  bool learn = true;  // weight block present?

  int plant(int i) const { return 6 + 6 * i; }
  int obs(int i) const { return 6 + 6 * n_agents + 42 * i; }
  int weights(int i) const { return 6 + 48 * n_agents + 3 * nodes * i; }
  int size() const {
    return 6 + 48 * n_agents + (learn ? 3 * nodes * n_agents : 0);
  }
};

// Everything recorded about one agent, sampled on the decimated time grid
// (one column per sample).
struct AgentSeries {
  Eigen::Matrix3Xd eta;      // position/heading
  Eigen::Matrix3Xd nu;       // body velocities
  Eigen::MatrixXd chi_hat;   // 6 x n: leader-state estimate
  Eigen::VectorXd A_err;     // ||A_hat - A0||_F
  Eigen::Matrix3Xd z1;       // backstepping position error
  Eigen::Matrix3Xd z2;       // backstepping velocity error
  Eigen::Matrix3Xd tau;      // applied control
  Eigen::Matrix3Xd F;        // true lumped nonlinearity (oracle, not fed back)
  Eigen::Matrix3Xd nn;       // network output W^T S(Z)
  Eigen::Matrix3Xd w_norm;   // per-channel weight-vector norms
};

struct SimTrace {
  std::vector<double> t;     // decimated sample times, t_k = k * dt
  Eigen::MatrixXd leader_chi;  // 6 x n
  std::vector<AgentSeries> agents;
  // Per-agent weight snapshots every weight_stride-th sample (adaptive runs;
  // empty in pretrained mode where weights never move).
  std::vector<rbf::WeightSeries> weights;
  long long adaptation_evals = 0;  // adaptation-law evaluations; 0 = replay
  NnSpec nn;                       // grid the weight columns refer to
  std::vector<std::string> warnings;  // validation warnings for this run

  int n_samples() const { return static_cast<int>(t.size()); }
  int n_agents() const { return static_cast<int>(agents.size()); }
};

// ---------------------------------------------------------------------------
// Classical fixed-step 4th-order Runge-Kutta.  The scratch/template form is
// what the engine drives (no per-step allocation, same arithmetic for every
// caller); f(x, dx) writes the derivative of x into dx and must not alias.
struct Rk4Scratch {
  Eigen::VectorXd k1, k2, k3, k4, xs;
  void resize(Eigen::Index n) {
    if (k1.size() != n) {
      k1.resize(n);
      k2.resize(n);
      k3.resize(n);
      k4.resize(n);
      xs.resize(n);
    }
  }
};

template <class Deriv>
void rk4_step_into(Deriv&& f, const Eigen::VectorXd& x, double dt,
                   Eigen::VectorXd& out, Rk4Scratch& s) {
  s.resize(x.size());
  f(x, s.k1);
  s.xs = x + (0.5 * dt) * s.k1;
  f(s.xs, s.k2);
  s.xs = x + (0.5 * dt) * s.k2;
  f(s.xs, s.k3);
  s.xs = x + dt * s.k3;
  f(s.xs, s.k4);
  out = x + (dt / 6.0) * (s.k1 + 2.0 * s.k2 + 2.0 * s.k3 + s.k4);
}

// Single-step convenience for tests and bindings.  Throws NonFiniteState if
// the update produces a NaN/Inf component.
Eigen::VectorXd step_rk4(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& derivative_fn,
    const Eigen::VectorXd& state, double dt);

// ---------------------------------------------------------------------------
// Runs cfg from t = 0 to round(t_end / dt) * dt and records the decimated
// trace.  Per derivative evaluation: leader, then every observer's rates,
// then per agent the observer second derivative -> backstepping -> network ->
// control -> plant (+ weight adaptation in adaptive mode).  Single-threaded
// and strictly ordered, so identical configs give bit-identical traces.
// Throws NonFiniteState (with time and component), MissingWeightsFile
// (pretrained mode), plus anything validate_config raises; spanning-tree and
// gain-relation problems only warn (trace.warnings) and the run proceeds.
SimTrace run_scenario(const SimConfig& cfg);

// Consolidates each agent's weight snapshots with t in [t_a, t_b] into their
// mean and writes one file per agent: <prefix>1.rbfw .. <prefix>N.rbfw.
// Returns the written paths.  Throws EmptyWindow (no snapshots in window, or
// a pretrained trace), IoError.
std::vector<std::string> export_learned_weights(const SimTrace& trace,
                                                double t_a, double t_b,
                                                const std::string& prefix);

}  // namespace auvfl::sim
