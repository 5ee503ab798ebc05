#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "auvfl/analysis.hpp"
#include "auvfl/dynamics.hpp"
#include "auvfl/errors.hpp"
#include "auvfl/rbf.hpp"
#include "auvfl/scenario.hpp"
#include "auvfl/sim.hpp"

using auvfl::Errc;
using auvfl::Error;
namespace ana = auvfl::analysis;
namespace dyn = auvfl::dynamics;
namespace rbf = auvfl::rbf;
namespace sim = auvfl::sim;

namespace {

template <class F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Blank trace scaffold: n samples at spacing dt, everything zeroed.
sim::SimTrace blank_trace(int n, double dt, int n_agents) {
  sim::SimTrace tr;
  tr.t.resize(n);
  for (int i = 0; i < n; ++i) tr.t[i] = i * dt;
  tr.leader_chi = Eigen::MatrixXd::Zero(6, n);
  tr.agents.resize(n_agents);
  for (auto& a : tr.agents) {
    a.eta = Eigen::Matrix3Xd::Zero(3, n);
    a.nu = Eigen::Matrix3Xd::Zero(3, n);
    a.chi_hat = Eigen::MatrixXd::Zero(6, n);
    a.A_err = Eigen::VectorXd::Zero(n);
    a.z1 = Eigen::Matrix3Xd::Zero(3, n);
    a.z2 = Eigen::Matrix3Xd::Zero(3, n);
    a.tau = Eigen::Matrix3Xd::Zero(3, n);
    a.F = Eigen::Matrix3Xd::Zero(3, n);
    a.nn = Eigen::Matrix3Xd::Zero(3, n);
    a.w_norm = Eigen::Matrix3Xd::Zero(3, n);
  }
  return tr;
}

}  // namespace

TEST_CASE("decay fit recovers a clean exponential") {
  // leader at zero, estimate error e(t) = 5 exp(-2 t) along one axis
  sim::SimTrace tr = blank_trace(501, 0.01, 1);
  for (int i = 0; i <= 500; ++i) {
    tr.agents[0].chi_hat(0, i) = 5.0 * std::exp(-2.0 * tr.t[i]);
  }
  const std::vector<ana::DecayFit> fits = ana::observer_decay_fit(tr);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].rate == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fits[0].r2 > 0.999999);
  // the fit skips the head until the error falls to 5% of its peak:
  // exp(-2 t) = 0.05  =>  t = ln(20)/2 = 1.4979
  CHECK(fits[0].t_begin == doctest::Approx(std::log(20.0) / 2.0).epsilon(0.02));
  CHECK(fits[0].t_end == doctest::Approx(5.0).epsilon(0.01));
}

TEST_CASE("decay fit skips a non-exponential head") {
  // flat plateau for 1 s, then the same exponential
  sim::SimTrace tr = blank_trace(601, 0.01, 1);
  for (int i = 0; i <= 600; ++i) {
    const double t = tr.t[i];
    tr.agents[0].chi_hat(0, i) =
        t < 1.0 ? 5.0 : 5.0 * std::exp(-2.0 * (t - 1.0));
  }
  const std::vector<ana::DecayFit> fits = ana::observer_decay_fit(tr);
  CHECK(fits[0].t_begin > 2.3);  // 1 s plateau + 1.5 s drop to 5%
  CHECK(fits[0].rate == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(fits[0].r2 > 0.999999);
}

TEST_CASE("decay fit refuses degenerate series") {
  // identically zero error: nothing to fit a log-line through
  sim::SimTrace flat = blank_trace(100, 0.01, 1);
  CHECK(thrown_code([&] { ana::observer_decay_fit(flat); }) ==
        Errc::DegenerateSegment);

  // too few samples
  sim::SimTrace tiny = blank_trace(4, 0.01, 1);
  for (int i = 0; i < 4; ++i) {
    tiny.agents[0].chi_hat(0, i) = std::exp(-2.0 * tiny.t[i]);
  }
  CHECK(thrown_code([&] { ana::observer_decay_fit(tiny); }) ==
        Errc::DegenerateSegment);
}

TEST_CASE("formation error of a constant-offset follower") {
  const int n = 401;
  sim::SimTrace tr = blank_trace(n, 0.01, 1);
  const dyn::Vec3 d_star(0.5, -0.5, 0.0);
  const dyn::Vec3 miss(0.06, 0.0, 0.08);  // |miss| = 0.1 exactly
  for (int i = 0; i < n; ++i) {
    const double t = tr.t[i];
    const dyn::Vec3 eta0(2.0 * std::sin(t), 2.0 * std::cos(t), 0.0);
    tr.leader_chi.block<3, 1>(0, i) = eta0;
    tr.agents[0].eta.col(i) = eta0 + d_star + miss;
  }
  const ana::FormationErrors fe = ana::formation_error_series(tr, {d_star});
  REQUIRE(fe.err.size() == 1);
  REQUIRE(fe.err[0].size() == n);
  for (int i = 0; i < n; i += 50) {
    CHECK(fe.err[0](i) == doctest::Approx(0.1).epsilon(1e-12));
  }
  CHECK(fe.mean_tail(0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fe.max_tail(0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("orbit radius reads the leader's recorded extent") {
  sim::SimTrace tr = blank_trace(700, 0.01, 1);
  for (int i = 0; i < 700; ++i) {
    tr.leader_chi(0, i) = 8.0 * std::sin(tr.t[i]);
    tr.leader_chi(1, i) = 8.0 * std::cos(tr.t[i]);
  }
  CHECK(ana::orbit_radius(tr) == 8.0);  // |y| = 8 exactly at t = 0
}

TEST_CASE("transient time finds where the error settles") {
  // error is 10x its settled value until t = 2, then drops to it
  const int n = 1001;
  sim::SimTrace tr = blank_trace(n, 0.01, 1);
  for (int i = 0; i < n; ++i) {
    const double e = tr.t[i] < 2.0 ? 0.1 : 0.01;
    tr.agents[0].eta.col(i) = dyn::Vec3(e, 0.0, 0.0);
  }
  const double t_settle = ana::transient_time(tr, {dyn::Vec3::Zero()});
  CHECK(t_settle == doctest::Approx(2.0).epsilon(0.01));

  // an error that never settles falls back to the final-quartile start
  sim::SimTrace never = blank_trace(n, 0.01, 1);
  for (int i = 0; i < n; ++i) {
    never.agents[0].eta.col(i) = dyn::Vec3(10.0 - tr.t[i], 0.0, 0.0);
  }
  const double t_fallback = ana::transient_time(never, {dyn::Vec3::Zero()});
  CHECK(t_fallback >= 7.4);
}

TEST_CASE("approximation report on a function the grid can represent") {
  // Build a trace whose recorded nonlinearity is exactly a network output;
  // the frozen weights, the online series, and the LSQ floor should then all
  // agree to numerical precision.
  const int n = 240;
  sim::SimTrace tr = blank_trace(n, 0.05, 1);
  tr.nn.bounds = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  tr.nn.counts = {3, 3, 3};
  tr.nn.width = 1.0;
  tr.nn.input = sim::NnInput::nu;

  rbf::RbfNetwork net =
      rbf::build_grid_network(tr.nn.bounds, tr.nn.counts, tr.nn.width);
  Eigen::MatrixXd w_star(net.n_nodes(), 3);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int j = 0; j < w_star.rows(); ++j) {
    for (int k = 0; k < 3; ++k) w_star(j, k) = u(rng);
  }

  for (int i = 0; i < n; ++i) {
    const dyn::Vec3 z(u(rng), u(rng), u(rng));
    tr.agents[0].nu.col(i) = z;
    const Eigen::VectorXd S = rbf::regressor(net, z);
    tr.agents[0].F.col(i) = (w_star.transpose() * S);
    tr.agents[0].nn.col(i) = tr.agents[0].F.col(i);
  }

  const std::vector<ana::AgentApproxReport> rep =
      ana::approximation_report(tr, {w_star}, net, 0.0, 1);
  REQUIRE(rep.size() == 1);
  for (int k = 0; k < 3; ++k) {
    CHECK(rep[0].frozen[k].median < 1e-10);
    CHECK(rep[0].frozen[k].p95 < 1e-10);
    CHECK(rep[0].online[k].median < 1e-10);
    // the ridge-free floor only carries the solver's jitter
    CHECK(rep[0].lsq[k].median < 1e-6);
  }

  SUBCASE("a heavy ridge drags the floor away from the perfect fit") {
    const std::vector<ana::AgentApproxReport> ridged =
        ana::approximation_report(tr, {w_star}, net, 0.0, 1,
                                  Eigen::Vector3d(50.0, 50.0, 50.0));
    for (int k = 0; k < 3; ++k) {
      CHECK(ridged[0].lsq[k].median > 1e-3);
      // the frozen-weight stats don't depend on the ridge
      CHECK(ridged[0].frozen[k].median == rep[0].frozen[k].median);
    }
  }

  SUBCASE("empty w_bar zeroes the frozen stats but keeps the floor") {
    const std::vector<ana::AgentApproxReport> bare =
        ana::approximation_report(tr, {}, net, 0.0, 1);
    for (int k = 0; k < 3; ++k) {
      CHECK(bare[0].frozen[k].median == 0.0);
      CHECK(bare[0].lsq[k].median < 1e-6);
    }
  }

  SUBCASE("no samples past t_from") {
    CHECK(thrown_code([&] {
            ana::approximation_report(tr, {w_star}, net, 1e6, 1);
          }) == Errc::MissingOracleSeries);
  }

  SUBCASE("weight matrix on the wrong grid") {
    CHECK(thrown_code([&] {
            ana::approximation_report(
                tr, {Eigen::MatrixXd::Zero(5, 3)}, net, 0.0, 1);
          }) == Errc::DimensionMismatch);
  }
}

TEST_CASE("lyapunov diagnostic on a monotone shrink") {
  const int n = 200;
  sim::SimTrace tr = blank_trace(n, 0.01, 1);
  const dyn::VehicleParams p = sim::vehicle_preset("mini1");
  for (int i = 0; i < n; ++i) {
    const double s = std::exp(-tr.t[i]);
    tr.agents[0].z1.col(i) = dyn::Vec3(0.1 * s, -0.2 * s, 0.05 * s);
    tr.agents[0].z2.col(i) = dyn::Vec3(0.04 * s, 0.02 * s, -0.03 * s);
  }
  const ana::LyapunovDiagnostic ld = ana::lyapunov_diagnostic(tr, {p});
  REQUIRE(ld.V.size() == 1);
  REQUIRE(ld.V[0].size() == n);
  CHECK(ld.frac_decreasing(0) == 1.0);

  // V(0) by hand: 1/2 z1.z1 + 1/2 z2' M z2
  const dyn::Vec3 z1(0.1, -0.2, 0.05);
  const dyn::Vec3 z2(0.04, 0.02, -0.03);
  const double want =
      0.5 * z1.squaredNorm() +
      0.5 * z2.dot(dyn::mass_matrix(p) * z2);
  CHECK(ld.V[0](0) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("whole-trace report on a live run") {
  // long enough for the estimate error to fall below 5% of its peak, which
  // is where the decay fit opens its window
  sim::SimConfig cfg = sim::preset("desk-5auv");
  cfg.sim.t_end = 10.0;
  const sim::SimTrace tr = sim::run_scenario(cfg);

  std::vector<dyn::Vec3> offsets;
  std::vector<dyn::VehicleParams> params;
  for (const auto& a : cfg.agents) {
    offsets.push_back(a.d_star);
    params.push_back(a.params);
  }

  const ana::ConvergenceReport r =
      ana::build_report(tr, offsets, params, {});
  CHECK(r.orbit_radius == doctest::Approx(8.0).epsilon(0.01));
  CHECK(r.chi_err_initial.size() == 5);
  CHECK(r.formation_mean_tail.size() == 5);
  CHECK(r.weight_drift.rows() == 5);
  CHECK(r.weight_drift.cols() == 3);
  CHECK(r.observer_fit.size() == 5);
  CHECK(r.approx.size() == 5);
  // by now the observers have collapsed almost all of the estimate error
  for (int i = 0; i < 5; ++i) {
    CHECK(r.chi_err_final(i) < r.chi_err_initial(i));
  }

  const std::string text = ana::report_text(r);
  CHECK(text.find("transient_end = ") != std::string::npos);
  CHECK(text.find("agent5.formation_mean_tail = ") != std::string::npos);
  CHECK(text.find("observer_pass = ") != std::string::npos);
}
