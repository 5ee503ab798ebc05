#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "auvfl/dynamics.hpp"
#include "auvfl/graph.hpp"

namespace auvfl::estimator {

using dynamics::Mat6;
using dynamics::Vec6;

// One agent's running estimate of the leader's state and system matrix.
struct ObserverState {
  Vec6 chi_hat = Vec6::Zero();
  Mat6 A_hat = Mat6::Zero();
};

struct ObserverGains {
  double beta1 = 1.0;
  double beta2 = 1.0;
};

struct ObserverDerivative {
  Vec6 chi_hat_dot = Vec6::Zero();
  Mat6 A_hat_dot = Mat6::Zero();
};

// Consensus core shared by the std::map front-ends below and the simulation
// engine (which feeds views into its packed state vector), so both integrate
// the exact same arithmetic, term order included.  chi_of(j) / A_of(j) must
// yield node j's current estimate as Vec6 / Mat6; node 0 is the leader truth.
//
//   chi_dot_i = A_hat_i chi_hat_i + beta1 * sum_j a_ij (chi_hat_j - chi_hat_i)
//   A_dot_i   =                     beta2 * sum_j a_ij (A_hat_j  - A_hat_i)
template <class ChiOf, class AOf>
void observer_rates_core(int i, const Vec6& chi_i, const Mat6& A_i,
                         ChiOf&& chi_of, AOf&& A_of, const graph::Topology& t,
                         const ObserverGains& g, Eigen::Ref<Vec6> chi_dot,
                         Eigen::Ref<Mat6> A_dot) {
  chi_dot.noalias() = A_i * chi_i;
  A_dot.setZero();
  const Eigen::MatrixXd& adj = t.adjacency;
  for (Eigen::Index j = 0; j < adj.cols(); ++j) {
    const double a = adj(i, j);
    if (a <= 0.0) continue;
    const Vec6 chi_j = chi_of(static_cast<int>(j));
    const Mat6 A_j = A_of(static_cast<int>(j));
    chi_dot += (g.beta1 * a) * (chi_j - chi_i);
    A_dot += (g.beta2 * a) * (A_j - A_i);
  }
}

// Second time derivative of chi_hat_i under a fixed topology; needs the first
// derivatives of i and of every neighbor (leader's is A0 chi0).
//
//   chi_ddot_i = A_dot_i chi_i + A_i chi_dot_i
//                + beta1 * sum_j a_ij (chi_dot_j - chi_dot_i)
template <class ChiDotOf>
Vec6 observer_accel_core(int i, const Vec6& chi_i, const Mat6& A_i,
                         const Vec6& chi_dot_i, const Mat6& A_dot_i,
                         ChiDotOf&& chi_dot_of, const graph::Topology& t,
                         const ObserverGains& g) {
  Vec6 out = A_dot_i * chi_i + A_i * chi_dot_i;
  const Eigen::MatrixXd& adj = t.adjacency;
  for (Eigen::Index j = 0; j < adj.cols(); ++j) {
    const double a = adj(i, j);
    if (a <= 0.0) continue;
    const Vec6 d_j = chi_dot_of(static_cast<int>(j));
    out += (g.beta1 * a) * (d_j - chi_dot_i);
  }
  return out;
}

// Consensus observer for follower i (1-based node index).  neighbor_states
// must hold an entry for every j with a_ij > 0; node 0's entry carries the
// TRUE leader (chi0, A0) — the only place leader truth enters a follower
// computation.  Throws MissingNeighbor.
ObserverDerivative observer_derivative(
    int i, const ObserverState& own,
    const std::map<int, ObserverState>& neighbor_states,
    const graph::Topology& t, const ObserverGains& g);

// all_derivatives must hold i's own entry and one per neighbor; the leader's
// entry is (A0 chi0, 0).  Throws MissingNeighborDerivative.
Vec6 observer_second_derivative(
    int i, const std::map<int, ObserverDerivative>& all_derivatives,
    const ObserverState& own, const graph::Topology& t,
    const ObserverGains& g);

// Per agent: (|chi_hat - chi0|_2, |A_hat - A0|_F).
std::vector<std::pair<double, double>> estimation_errors(
    const std::vector<ObserverState>& states, const dynamics::LeaderModel& l);

}  // namespace auvfl::estimator
