#pragma once

#include <Eigen/Dense>

#include "auvfl/errors.hpp"

namespace auvfl::dynamics {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Rigid-body + hydrodynamic coefficients of one 3-DOF vehicle (surge u,
// sway v, yaw r).  Coefficients use SNAME sign conventions, so added-mass
// and drag coefficients are typically negative.
struct VehicleParams {
  double m = 0.0;    // dry mass [kg]
  double I_z = 0.0;  // yaw inertia [kg m^2]
  double x_g = 0.0;  // longitudinal CoG offset [m]

  // added mass
  double X_du = 0.0, Y_dv = 0.0, Y_dr = 0.0, N_dr = 0.0;
  // linear damping
  double X_u = 0.0, Y_v = 0.0, Y_r = 0.0, N_v = 0.0, N_r = 0.0;
  // quadratic damping
  double X_uu = 0.0, Y_vv = 0.0, Y_rv = 0.0, Y_vr = 0.0, Y_rr = 0.0;
  double N_vv = 0.0, N_rv = 0.0, N_vr = 0.0, N_rr = 0.0;

  // Which unmodeled-dynamics vector this vehicle carries (1..5, see
  // uncertainty()).  id 1 is the zero vector.
  int uncertainty_id = 1;
};

// Pose eta = [x, y, psi] in the world frame (psi unwrapped, radians) and
// body-frame velocity nu = [u, v, r].
struct AgentState {
  Vec3 eta = Vec3::Zero();
  Vec3 nu = Vec3::Zero();
};

struct StateDerivative {
  Vec3 eta_dot;
  Vec3 nu_dot;
};

// Virtual leader: chi0 = col{eta0, nu0} driven by chi0_dot = A0 * chi0.
struct LeaderModel {
  Mat6 A0 = Mat6::Zero();
  Vec6 chi0 = Vec6::Zero();
};

// M = [[m11,0,0],[0,m22,m23],[0,m23,m33]] with m11 = m - X_du,
// m22 = m - Y_dv, m23 = m*x_g - Y_dr, m33 = I_z - N_dr.
// Throws NotPositiveDefinite when the parameter set is unphysical.
Mat3 mass_matrix(const VehicleParams& p);

// C(nu) = [[0, 0, -m22 v - m23 r], [0, 0, -m11 u], [m22 v + m23 r, -m11 u, 0]].
// Note the (3,2) entry is -m11*u: the matrix is NOT skew-symmetric.  Passing
// skew_c32 = true flips that entry to +m11*u for sensitivity studies.
Mat3 coriolis_matrix(const VehicleParams& p, const Vec3& nu,
                     bool skew_c32 = false);

// D(nu) = [[d11,0,0],[0,d22,d23],[0,d32,d33]] with
//   d11 = -(X_u + X_uu|u|)
//   d22 = -(Y_v + Y_vv|v| + Y_rv|r|)      d23 = -(Y_r + Y_vr|v| + Y_rr|r|)
//   d32 = -(N_v + N_vv|v| + N_rv|r|)      d33 = -(N_r + N_vr|v| + N_rr|r|)
Mat3 damping_matrix(const VehicleParams& p, const Vec3& nu);

// Unmodeled dynamics Delta(chi) with chi = col{eta, nu}; the five built-in
// vectors only read the velocity half:
//   1: 0
//   2: [0.2 u^2 + 0.3 v,  -0.95,        0.33 |r|  ]
//   3: [-0.58 + cos v,     0.23 r^3,    0.74 u^2  ]
//   4: [-0.31,             0,           0.38 u^2 + v^3]
//   5: [sin v,             cos(u + r),  -0.65     ]
// Throws UnknownUncertaintyId outside 1..5.
Vec3 uncertainty(const VehicleParams& p, const Vec6& chi);

// J(psi) = [[cos, sin, 0], [-sin, cos, 0], [0, 0, 1]]
Mat3 rotation(double psi);

// dJ/dt = dJ/dpsi * r
Mat3 rotation_rate(double psi, double r);

// Open-loop vehicle dynamics:
//   eta_dot = J(psi) nu
//   nu_dot  = M^{-1} (tau - C nu - D nu - g - Delta(chi))
// g_restoring defaults to zero (neutrally buoyant, planar motion).
StateDerivative vehicle_derivative(const VehicleParams& p, const AgentState& s,
                                   const Vec3& tau, bool skew_c32 = false,
                                   const Vec3& g_restoring = Vec3::Zero());

// chi0_dot = A0 * chi0
Vec6 leader_derivative(const LeaderModel& l);

// The stock neutrally-stable leader:
//   A0 = [[0, B], [-B, 0]] with B = diag(1, -1, 1),
//   chi0(0) = [0, a, 0, a, 0, a].
// Its solution is eta0(t) = [a sin t, a cos t, a sin t],
// nu0(t) = [a cos t, a sin t, a cos t].
LeaderModel default_leader(double amplitude);

// Closed-form trajectory of default_leader(amplitude) at time t; integration
// accuracy oracle.
Vec6 leader_closed_form_default(double t, double amplitude);

}  // namespace auvfl::dynamics
