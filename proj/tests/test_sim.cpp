#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "auvfl/errors.hpp"
#include "auvfl/rbf.hpp"
#include "auvfl/scenario.hpp"
#include "auvfl/sim.hpp"

using auvfl::Errc;
using auvfl::Error;
namespace sim = auvfl::sim;
namespace rbf = auvfl::rbf;
namespace fs = std::filesystem;

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

std::string scratch_prefix(const std::string& stem) {
  const fs::path dir = fs::temp_directory_path() / "auvfl-sim-tests";
  fs::create_directories(dir);
  return (dir / stem).string();
}

sim::SimConfig desk(double t_end) {
  sim::SimConfig cfg = sim::preset("desk-5auv");
  cfg.sim.t_end = t_end;
  return cfg;
}

}  // namespace

TEST_CASE("rk4 single step on x' = x, against the Taylor sum by hand") {
  auto f = [](const Eigen::VectorXd& x) { return x; };
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  const Eigen::VectorXd x1 = sim::step_rk4(f, x0, 0.1);
  // 1 + h + h^2/2 + h^3/6 + h^4/24 at h = 0.1
  CHECK(x1(0) == doctest::Approx(1.1051708333333333).epsilon(1e-15));
  CHECK(std::abs(x1(0) - std::exp(0.1)) < 1e-8);

  // and the template form used by the engine takes the same path
  sim::Rk4Scratch scratch;
  Eigen::VectorXd out(1);
  sim::rk4_step_into(
      [](const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = x; }, x0, 0.1,
      out, scratch);
  CHECK(out(0) == x1(0));
}

TEST_CASE("non-finite updates are rejected with the failing component") {
  auto f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd dx = x;
    dx(0) = std::numeric_limits<double>::quiet_NaN();
    return dx;
  };
  CHECK(thrown_code([&] {
          sim::step_rk4(f, Eigen::VectorXd::Ones(2), 0.1);
        }) == Errc::NonFiniteState);
}

TEST_CASE("packed state layout offsets") {
  sim::Layout lay;
  lay.n_agents = 2;
  lay.nodes = 5;
  lay.learn = true;
  CHECK(lay.plant(0) == 6);
  CHECK(lay.plant(1) == 12);
  CHECK(lay.obs(0) == 18);
  CHECK(lay.obs(1) == 60);
  CHECK(lay.weights(0) == 102);
  CHECK(lay.weights(1) == 117);
  CHECK(lay.size() == 132);

  lay.learn = false;  // replay runs carry no weight state at all
  CHECK(lay.size() == 102);
}

TEST_CASE("short adaptive run: sampling grid, leader, recording") {
  const sim::SimConfig cfg = desk(0.2);
  const sim::SimTrace tr = sim::run_scenario(cfg);

  // dt 1e-3, decimation 10 -> samples every 0.01 s, endpoints included
  REQUIRE(tr.n_samples() == 21);
  CHECK(tr.t.front() == 0.0);
  CHECK(tr.t[1] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(tr.t.back() == doctest::Approx(0.2).epsilon(1e-12));
  REQUIRE(tr.n_agents() == 5);

  // leader starts on its configured state and stays on its closed-form orbit
  CHECK((tr.leader_chi.col(0) - cfg.leader.chi0).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd chi_end = tr.leader_chi.col(tr.n_samples() - 1);
  const double omega = cfg.leader.A0(0, 3);  // the desk orbit's angular rate
  CHECK(std::abs(chi_end(0) - 8.0 * std::sin(omega * 0.2)) < 1e-8);

  // adaptation ran, and weight snapshots land every weight_stride-th sample
  CHECK(tr.adaptation_evals > 0);
  REQUIRE(tr.weights.size() == 5);
  REQUIRE(tr.weights[0].t.size() == 3);  // t = 0, 0.1, 0.2
  CHECK(tr.weights[0].t[0] == 0.0);
  CHECK(tr.weights[0].t[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(tr.weights[0].w[0].norm() == 0.0);  // cold start
  CHECK(tr.weights[0].w[2].norm() > 0.0);   // something was learned

  // every recorded series has one column per sample
  for (const auto& a : tr.agents) {
    CHECK(a.eta.cols() == 21);
    CHECK(a.nu.cols() == 21);
    CHECK(a.chi_hat.cols() == 21);
    CHECK(a.A_err.size() == 21);
    CHECK(a.z1.cols() == 21);
    CHECK(a.z2.cols() == 21);
    CHECK(a.tau.cols() == 21);
    CHECK(a.F.cols() == 21);
    CHECK(a.nn.cols() == 21);
    CHECK(a.w_norm.cols() == 21);
  }

  // observers start at zero, so the initial estimate error is |chi0|
  CHECK(tr.agents[0].chi_hat.col(0).norm() == 0.0);
}

TEST_CASE("reruns of the same scenario are bit-identical") {
  const sim::SimConfig cfg = desk(0.1);
  const sim::SimTrace a = sim::run_scenario(cfg);
  const sim::SimTrace b = sim::run_scenario(cfg);
  CHECK((a.leader_chi - b.leader_chi).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 5; ++i) {
    CHECK((a.agents[i].eta - b.agents[i].eta).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.agents[i].tau - b.agents[i].tau).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.agents[i].w_norm - b.agents[i].w_norm).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("weight export, replay, and warm starts") {
  const std::string prefix = scratch_prefix("w");
  const sim::SimConfig cfg = desk(0.2);
  const sim::SimTrace tr = sim::run_scenario(cfg);

  const std::vector<std::string> written =
      sim::export_learned_weights(tr, 0.0, 0.2, prefix);
  REQUIRE(written.size() == 5);
  for (const auto& p : written) CHECK(fs::exists(p));

  // exported file = mean of the snapshots in the window, on the run's grid
  const rbf::RbfNetwork w1 = rbf::load_weights(prefix + "1.rbfw");
  const Eigen::MatrixXd want = rbf::average_weights(tr.weights[0], 0.0, 0.2);
  CHECK((w1.weights - want).cwiseAbs().maxCoeff() == 0.0);
  CHECK(w1.counts == cfg.nn.counts);
  CHECK(w1.width == cfg.nn.width);

  SUBCASE("an empty export window is refused") {
    CHECK(thrown_code([&] {
            sim::export_learned_weights(tr, 35.0, 36.0, prefix + "none");
          }) == Errc::EmptyWindow);
  }

  SUBCASE("replay runs hold the weights still and never adapt") {
    sim::SimConfig replay = desk(0.05);
    replay.mode = sim::ControllerMode::pretrained;
    replay.weights_prefix = prefix;
    const sim::SimTrace rt = sim::run_scenario(replay);
    CHECK(rt.adaptation_evals == 0);
    CHECK(rt.weights.empty());
    // the recorded per-channel weight norms stay frozen at the file values
    const double wn0 = rt.agents[0].w_norm(0, 0);
    CHECK(wn0 == doctest::Approx(w1.weights.col(0).norm()).epsilon(1e-14));
    CHECK((rt.agents[0].w_norm.row(0).array() == wn0).all());
  }

  SUBCASE("warm starts resume from the exported weights exactly") {
    sim::SimConfig warm = desk(0.05);
    warm.warm_start_prefix = prefix;
    const sim::SimTrace wt = sim::run_scenario(warm);
    REQUIRE(!wt.weights.empty());
    REQUIRE(!wt.weights[2].w.empty());
    const rbf::RbfNetwork w3 = rbf::load_weights(prefix + "3.rbfw");
    CHECK((wt.weights[2].w[0] - w3.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK(wt.adaptation_evals > 0);  // and adaptation continues from there
  }

  SUBCASE("a replay cannot also ask for a warm start") {
    sim::SimConfig bad = desk(0.05);
    bad.mode = sim::ControllerMode::pretrained;
    bad.weights_prefix = prefix;
    bad.warm_start_prefix = prefix;
    CHECK(thrown_code([&] { sim::run_scenario(bad); }) ==
          Errc::ValidationError);
  }

  SUBCASE("weights trained on a different grid are rejected") {
    sim::SimConfig other = desk(0.05);
    other.mode = sim::ControllerMode::pretrained;
    other.weights_prefix = prefix;
    other.nn.counts = {8, 8, 8};
    CHECK(thrown_code([&] { sim::run_scenario(other); }) ==
          Errc::ValidationError);
  }
}

TEST_CASE("replay without weight files on disk") {
  sim::SimConfig cfg = desk(0.05);
  cfg.mode = sim::ControllerMode::pretrained;
  cfg.weights_prefix = scratch_prefix("missing-");
  CHECK(thrown_code([&] { sim::run_scenario(cfg); }) ==
        Errc::MissingWeightsFile);
}

TEST_CASE("a pretrained trace has no snapshots to export") {
  const std::string prefix = scratch_prefix("pexp");
  const sim::SimTrace tr = sim::run_scenario(desk(0.2));
  sim::export_learned_weights(tr, 0.0, 0.2, prefix);

  sim::SimConfig replay = desk(0.05);
  replay.mode = sim::ControllerMode::pretrained;
  replay.weights_prefix = prefix;
  const sim::SimTrace rt = sim::run_scenario(replay);
  CHECK(thrown_code([&] {
          sim::export_learned_weights(rt, 0.0, 0.05, prefix + "again");
        }) == Errc::EmptyWindow);
}
