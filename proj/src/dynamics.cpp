#include "auvfl/dynamics.hpp"

#include <cmath>

namespace auvfl::dynamics {

namespace {

struct MassEntries {
  double m11, m22, m23, m33;
};

MassEntries mass_entries(const VehicleParams& p) {
  return {p.m - p.X_du, p.m - p.Y_dv, p.m * p.x_g - p.Y_dr, p.I_z - p.N_dr};
}

}  // namespace

Mat3 mass_matrix(const VehicleParams& p) {
  const auto [m11, m22, m23, m33] = mass_entries(p);
  // leading principal minors of the symmetric matrix
  if (!(m11 > 0.0) || !(m22 > 0.0) || !(m22 * m33 - m23 * m23 > 0.0)) {
    raise(Errc::NotPositiveDefinite,
          "mass matrix is not positive definite (m11=" + std::to_string(m11) +
              ", m22=" + std::to_string(m22) + ", m23=" + std::to_string(m23) +
              ", m33=" + std::to_string(m33) + ")");
  }
  Mat3 M;
  M << m11, 0.0, 0.0,
       0.0, m22, m23,
       0.0, m23, m33;
  return M;
}

Mat3 coriolis_matrix(const VehicleParams& p, const Vec3& nu, bool skew_c32) {
  const auto [m11, m22, m23, m33] = mass_entries(p);
  (void)m33;
  const double u = nu(0), v = nu(1), r = nu(2);
  const double c13 = -m22 * v - m23 * r;
  const double c23 = -m11 * u;
  Mat3 C;
  C << 0.0, 0.0, c13,
       0.0, 0.0, c23,
       -c13, (skew_c32 ? -c23 : c23), 0.0;
  return C;
}

Mat3 damping_matrix(const VehicleParams& p, const Vec3& nu) {
  const double au = std::abs(nu(0)), av = std::abs(nu(1)), ar = std::abs(nu(2));
  const double d11 = -(p.X_u + p.X_uu * au);
  const double d22 = -(p.Y_v + p.Y_vv * av + p.Y_rv * ar);
  const double d23 = -(p.Y_r + p.Y_vr * av + p.Y_rr * ar);
  const double d32 = -(p.N_v + p.N_vv * av + p.N_rv * ar);
  const double d33 = -(p.N_r + p.N_vr * av + p.N_rr * ar);
  Mat3 D;
  D << d11, 0.0, 0.0,
       0.0, d22, d23,
       0.0, d32, d33;
  return D;
}

Vec3 uncertainty(const VehicleParams& p, const Vec6& chi) {
  const double u = chi(3), v = chi(4), r = chi(5);
  switch (p.uncertainty_id) {
    case 1:
      return Vec3::Zero();
    case 2:
      return {0.2 * u * u + 0.3 * v, -0.95, 0.33 * std::abs(r)};
    case 3:
      return {-0.58 + std::cos(v), 0.23 * r * r * r, 0.74 * u * u};
    case 4:
      return {-0.31, 0.0, 0.38 * u * u + v * v * v};
    case 5:
      return {std::sin(v), std::cos(u + r), -0.65};
    default:
      raise(Errc::UnknownUncertaintyId,
            "uncertainty_id " + std::to_string(p.uncertainty_id) +
                " not in 1..5");
  }
}

Mat3 rotation(double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  Mat3 J;
  J << c, s, 0.0,
       -s, c, 0.0,
       0.0, 0.0, 1.0;
  return J;
}

Mat3 rotation_rate(double psi, double r) {
  const double c = std::cos(psi), s = std::sin(psi);
  Mat3 Jdot;
  Jdot << -s, c, 0.0,
          -c, -s, 0.0,
          0.0, 0.0, 0.0;
  return Jdot * r;
}

StateDerivative vehicle_derivative(const VehicleParams& p, const AgentState& s,
                                   const Vec3& tau, bool skew_c32,
                                   const Vec3& g_restoring) {
  Vec6 chi;
  chi << s.eta, s.nu;
  const Mat3 M = mass_matrix(p);
  const Vec3 rhs = tau - coriolis_matrix(p, s.nu, skew_c32) * s.nu -
                   damping_matrix(p, s.nu) * s.nu - g_restoring -
                   uncertainty(p, chi);
  StateDerivative d;
  d.eta_dot = rotation(s.eta(2)) * s.nu;
  d.nu_dot = M.ldlt().solve(rhs);
  return d;
}

Vec6 leader_derivative(const LeaderModel& l) { return l.A0 * l.chi0; }

LeaderModel default_leader(double amplitude) {
  LeaderModel l;
  Mat3 B = Mat3::Zero();
  B.diagonal() << 1.0, -1.0, 1.0;
  l.A0.topRightCorner<3, 3>() = B;
  l.A0.bottomLeftCorner<3, 3>() = -B;
  l.chi0 << 0.0, amplitude, 0.0, amplitude, 0.0, amplitude;
  return l;
}

Vec6 leader_closed_form_default(double t, double amplitude) {
  const double s = amplitude * std::sin(t), c = amplitude * std::cos(t);
  Vec6 chi;
  chi << s, c, s, c, s, c;
  return chi;
}

}  // namespace auvfl::dynamics
