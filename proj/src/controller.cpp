#include "auvfl/controller.hpp"

#include <Eigen/Eigenvalues>

namespace auvfl::controller {

namespace {

void require_spd(const Mat3& K, const char* name) {
  if (!K.isApprox(K.transpose(), 1e-12)) {
    raise(Errc::NotPositiveDefinite, std::string(name) + " is not symmetric");
  }
  Eigen::LLT<Mat3> llt(K);
  if (llt.info() != Eigen::Success) {
    raise(Errc::NotPositiveDefinite,
          std::string(name) + " is not positive definite");
  }
}

}  // namespace

void validate_gains(const ControllerGains& g) {
  require_spd(g.K1, "K1");
  require_spd(g.K2, "K2");
  for (int k = 0; k < 3; ++k) {
    if (!(g.Gamma(k) > 0.0)) {
      raise(Errc::ValidationError, "Gamma must be positive per channel");
    }
    if (!(g.sigma(k) > 0.0)) {
      raise(Errc::ValidationError, "sigma must be positive per channel");
    }
  }
}

bool gain_relation_satisfied(const ControllerGains& g) {
  Eigen::SelfAdjointEigenSolver<Mat3> e1(g.K1), e2(g.K2);
  return e2.eigenvalues().minCoeff() > 2.0 * e1.eigenvalues().maxCoeff();
}

BacksteppingErrors backstepping_errors(const AgentState& s,
                                       const Vec3& eta_hat_d,
                                       const Vec3& eta_hat_d_dot,
                                       const ControllerGains& g) {
  BacksteppingErrors e;
  e.z1 = s.eta - eta_hat_d;
  e.alpha = dynamics::rotation(s.eta(2)).transpose() *
            (-g.K1 * e.z1 + eta_hat_d_dot);
  e.z2 = s.nu - e.alpha;
  return e;
}

Vec3 alpha_dot(const AgentState& s, const Vec3& z1, const Vec3& eta_hat_d_dot,
               const Vec3& eta_hat_d_ddot, const ControllerGains& g) {
  const Mat3 J = dynamics::rotation(s.eta(2));
  const Mat3 Jdot = dynamics::rotation_rate(s.eta(2), s.nu(2));
  return Jdot.transpose() * (-g.K1 * z1 + eta_hat_d_dot) +
         J.transpose() *
             (g.K1 * eta_hat_d_dot - g.K1 * (J * s.nu) + eta_hat_d_ddot);
}

Vec3 feedback_control(const Vec3& z1, const Vec3& z2, double psi,
                      const Mat3& K2, const Vec3& nn) {
  return -dynamics::rotation(psi).transpose() * z1 - K2 * z2 + nn;
}

Vec3 ddl_control(const Vec3& z1, const Vec3& z2, double psi,
                 const rbf::RbfNetwork& net, const Eigen::VectorXd& Z,
                 const ControllerGains& g) {
  return feedback_control(z1, z2, psi, g.K2, rbf::nn_output(net, Z));
}

Vec3 pretrained_control(const Vec3& z1, const Vec3& z2, double psi,
                        const rbf::RbfNetwork& frozen_net,
                        const Eigen::VectorXd& Z, const ControllerGains& g) {
  return feedback_control(z1, z2, psi, g.K2, rbf::nn_output(frozen_net, Z));
}

Eigen::MatrixXd adaptation_derivative(const rbf::RbfNetwork& net,
                                      const Eigen::VectorXd& Z, const Vec3& z2,
                                      const ControllerGains& g) {
  if (net.n_channels() != 3) {
    raise(Errc::DimensionMismatch,
          "adaptation needs a 3-channel network, got " +
              std::to_string(net.n_channels()));
  }
  const Eigen::VectorXd S = rbf::regressor(net, Z);
  Eigen::MatrixXd W_dot(net.n_nodes(), 3);
  adaptation_core(S, z2, g.Gamma, g.sigma, net.weights, W_dot);
  return W_dot;
}

Vec3 true_nonlinearity_oracle(const dynamics::VehicleParams& p,
                              const AgentState& s, const Vec3& alpha_dot_value,
                              bool skew_c32, const Vec3& g_restoring) {
  Vec6 chi;
  chi << s.eta, s.nu;
  return dynamics::mass_matrix(p) * alpha_dot_value +
         dynamics::coriolis_matrix(p, s.nu, skew_c32) * s.nu +
         dynamics::damping_matrix(p, s.nu) * s.nu + g_restoring +
         dynamics::uncertainty(p, chi);
}

}  // namespace auvfl::controller
