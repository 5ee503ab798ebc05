#pragma once

#include <Eigen/Dense>

#include "auvfl/dynamics.hpp"
#include "auvfl/rbf.hpp"

namespace auvfl::controller {

using dynamics::AgentState;
using dynamics::Mat3;
using dynamics::Vec3;
using dynamics::Vec6;

struct ControllerGains {
  Mat3 K1 = Mat3::Identity();
  Mat3 K2 = Mat3::Identity();
  Vec3 Gamma = Vec3::Ones();  // adaptation gain per channel
  Vec3 sigma = Vec3::Ones();  // leakage per channel
};

// Throws NotPositiveDefinite unless K1 and K2 are symmetric positive
// definite, ValidationError unless Gamma and sigma are positive.
void validate_gains(const ControllerGains& g);

// lambda_min(K2) > 2 lambda_max(K1).  Violations get a warning, not a
// rejection: convergence degrades gracefully and common published gain sets
// sit below the bound.
bool gain_relation_satisfied(const ControllerGains& g);

struct BacksteppingErrors {
  Vec3 z1;     // eta - eta_hat_d
  Vec3 alpha;  // J^T(psi) (-K1 z1 + eta_hat_d_dot)
  Vec3 z2;     // nu - alpha
};

// eta_hat_d = eta_hat_0i + d*_i is computed by the caller; its derivative is
// the position half of the observer derivative.
BacksteppingErrors backstepping_errors(const AgentState& s,
                                       const Vec3& eta_hat_d,
                                       const Vec3& eta_hat_d_dot,
                                       const ControllerGains& g);

// alpha_dot = Jdot^T (-K1 z1 + eta_hat_d_dot)
//           + J^T (K1 eta_hat_d_dot - K1 J nu + eta_hat_d_ddot)
// with Jdot = rotation_rate(psi, r).  z1 is passed in because the Jdot^T
// term needs it and the backstepping errors are already available upstream.
Vec3 alpha_dot(const AgentState& s, const Vec3& z1, const Vec3& eta_hat_d_dot,
               const Vec3& eta_hat_d_ddot, const ControllerGains& g);

// tau = -J^T(psi) z1 - K2 z2 + nn; shared by the adaptive and pretrained
// laws (and by the simulation engine, which computes nn from raw weight
// views).
Vec3 feedback_control(const Vec3& z1, const Vec3& z2, double psi,
                      const Mat3& K2, const Vec3& nn);

// Adaptive law: nn = current-weights network output at Z.
Vec3 ddl_control(const Vec3& z1, const Vec3& z2, double psi,
                 const rbf::RbfNetwork& net, const Eigen::VectorXd& Z,
                 const ControllerGains& g);

// Constant-weight replay law: identical formula, frozen weights, no weight
// state evolves.
Vec3 pretrained_control(const Vec3& z1, const Vec3& z2, double psi,
                        const rbf::RbfNetwork& frozen_net,
                        const Eigen::VectorXd& Z, const ControllerGains& g);

// sigma-modification per channel k: W_dot_k = -Gamma_k (S(Z) z2[k] +
// sigma_k W_k).  Shared between adaptation_derivative() and the engine so
// the expression exists once.
template <class WeightsLike, class OutLike>
void adaptation_core(const Eigen::VectorXd& S, const Vec3& z2,
                     const Vec3& Gamma, const Vec3& sigma,
                     const WeightsLike& W, OutLike&& W_dot) {
  for (int k = 0; k < 3; ++k) {
    W_dot.col(k) = -Gamma(k) * (S * z2(k) + sigma(k) * W.col(k));
  }
}

// n_nodes x 3 weight derivative for the network's current weights.
Eigen::MatrixXd adaptation_derivative(const rbf::RbfNetwork& net,
                                      const Eigen::VectorXd& Z, const Vec3& z2,
                                      const ControllerGains& g);

// Ground truth the network is learning: F = M alpha_dot + C nu + D nu +
// g_restoring + Delta(chi).  Simulator-side only — uses the true vehicle
// parameters the controller never sees; recorded in the trace so learning
// accuracy can be measured.
Vec3 true_nonlinearity_oracle(const dynamics::VehicleParams& p,
                              const AgentState& s, const Vec3& alpha_dot_value,
                              bool skew_c32 = false,
                              const Vec3& g_restoring = Vec3::Zero());

}  // namespace auvfl::controller
