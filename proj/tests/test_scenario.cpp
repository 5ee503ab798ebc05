#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "auvfl/errors.hpp"
#include "auvfl/graph.hpp"
#include "auvfl/scenario.hpp"

using auvfl::Errc;
using auvfl::Error;
namespace sim = auvfl::sim;

namespace {

template <class F>
std::optional<Errc> thrown_code(F&& f, std::string* msg = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (msg) *msg = e.what();
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("both built-in scenarios serialize and parse back to themselves") {
  for (const std::string& name : sim::preset_names()) {
    const sim::SimConfig cfg = sim::preset(name);
    const sim::SimConfig back =
        sim::parse_scenario_text(sim::serialize_scenario(cfg), name);
    CHECK(back == cfg);
  }
}

TEST_CASE("the shipped scenario text reproduces the preset") {
  for (const std::string& name : sim::preset_names()) {
    const sim::SimConfig from_text =
        sim::parse_scenario_text(sim::preset_text(name), name);
    CHECK(from_text == sim::preset(name));
  }
}

TEST_CASE("serialization survives awkward doubles") {
  sim::SimConfig cfg = sim::preset("desk-5auv");
  cfg.gains.sigma(0) = 0.1 + 0.2;  // 0.30000000000000004
  cfg.agents[1].eta0(0) = 1.0 / 3.0;
  cfg.sim.dt = 1e-3 * (1.0 + 1e-15);
  const sim::SimConfig back =
      sim::parse_scenario_text(sim::serialize_scenario(cfg));
  CHECK(back == cfg);
}

TEST_CASE("preset registry") {
  const std::vector<std::string> names = sim::preset_names();
  CHECK(names.size() == 2);
  CHECK(std::count(names.begin(), names.end(), "desk-5auv") == 1);
  CHECK(std::count(names.begin(), names.end(), "paper-5auv") == 1);
  CHECK(sim::is_preset_name("desk-5auv"));
  CHECK_FALSE(sim::is_preset_name("bench-5auv"));
  CHECK(thrown_code([] { sim::preset("bench-5auv"); }) ==
        Errc::ValidationError);
  CHECK(thrown_code([] { sim::vehicle_preset("auv9"); }) ==
        Errc::ValidationError);
}

TEST_CASE("desk scenario spot values") {
  const sim::SimConfig cfg = sim::preset("desk-5auv");
  CHECK(cfg.n_agents() == 5);
  CHECK(cfg.sim.dt == 1e-3);
  CHECK(cfg.sim.t_end == 40.0);
  CHECK(cfg.sim.decimation == 10);
  CHECK(cfg.mode == sim::ControllerMode::adaptive);
  CHECK(cfg.gains.K2(0, 0) == 14.4);
  CHECK(cfg.gains.K2(1, 1) == 12.0);
  CHECK(cfg.gains.Gamma(0) == 10.0);
  CHECK(cfg.gains.Gamma(2) == 30.0);
  CHECK(cfg.gains.sigma(0) == 5e-4);
  CHECK(cfg.nn.counts == std::vector<int>{9, 9, 9});
  CHECK(cfg.nn.width == 6.0);
  CHECK(cfg.nn.input == sim::NnInput::nu);
  // 8 m orbit with a 5 s lap
  CHECK(cfg.leader.chi0(1) == 8.0);
  CHECK(cfg.leader.A0(0, 3) == doctest::Approx(1.2566370614359172));
  // heterogeneous fleet: all five mass matrices differ
  for (int i = 1; i < 5; ++i) {
    CHECK(cfg.agents[i].params.m != cfg.agents[0].params.m);
  }
  CHECK_NOTHROW(sim::validate_config(cfg));
}

TEST_CASE("agent sections override named vehicle presets field by field") {
  const std::string text = R"(preset = desk-5auv

[topology]
adjacency = [0 0; 1 0]

[agent]
params = mini1
uncertainty = 2
X_uu = -0.5
eta0 = [0.1 0.2 0]
d_star = [0 0 0]
)";
  const sim::SimConfig cfg = sim::parse_scenario_text(text);
  REQUIRE(cfg.n_agents() == 1);  // explicit agents replace the preset fleet
  CHECK(cfg.agents[0].params.m == sim::vehicle_preset("mini1").m);
  CHECK(cfg.agents[0].params.X_uu == -0.5);  // the override wins
  CHECK(cfg.agents[0].params.uncertainty_id == 2);
  CHECK(cfg.agents[0].eta0(1) == 0.2);
  // untouched sections keep the preset's values
  CHECK(cfg.gains.K2(0, 0) == 14.4);
  CHECK(cfg.sim.dt == 1e-3);
}

TEST_CASE("parse errors carry the offending line") {
  std::string msg;
  const std::string bad = "[topology]\nadjacency = [0 0; 1 0\n";
  CHECK(thrown_code([&] { sim::parse_scenario_text(bad, "bad.scn"); }, &msg) ==
        Errc::ParseError);
  CHECK(msg.find("bad.scn") != std::string::npos);
  CHECK(msg.find("2") != std::string::npos);

  CHECK(thrown_code([] {
          sim::parse_scenario_text("[controller]\nfoo = 1\n");
        }) == Errc::ParseError);
  CHECK(thrown_code([] { sim::parse_scenario_text("[nonsense]\n"); }) ==
        Errc::ParseError);
  CHECK(thrown_code([] {
          sim::parse_scenario_text("t_end = 1\n");  // key before any section
        }) == Errc::ParseError);
}

TEST_CASE("semantic validation failures") {
  // adjacency sized for 2 agents but the fleet has 5
  sim::SimConfig cfg = sim::preset("desk-5auv");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 0) = 1.0;
  a(2, 1) = 1.0;
  cfg.topology = auvfl::graph::build_topology(a);
  CHECK(thrown_code([&] { sim::validate_config(cfg); }) ==
        Errc::ValidationError);

  // pretrained mode without a weights prefix
  cfg = sim::preset("desk-5auv");
  cfg.mode = sim::ControllerMode::pretrained;
  CHECK(thrown_code([&] { sim::validate_config(cfg); }) ==
        Errc::ValidationError);

  // warm start is an adaptive-mode feature
  cfg = sim::preset("desk-5auv");
  cfg.mode = sim::ControllerMode::pretrained;
  cfg.weights_prefix = "w";
  cfg.warm_start_prefix = "w";
  CHECK(thrown_code([&] { sim::validate_config(cfg); }) ==
        Errc::ValidationError);

  // non-positive adaptation gain
  cfg = sim::preset("desk-5auv");
  cfg.gains.Gamma(1) = 0.0;
  CHECK(thrown_code([&] { sim::validate_config(cfg); }) ==
        Errc::ValidationError);

  // empty fleet
  cfg = sim::preset("desk-5auv");
  cfg.agents.clear();
  CHECK(thrown_code([&] { sim::validate_config(cfg); }) ==
        Errc::ValidationError);
}

TEST_CASE("warnings for soft problems instead of rejection") {
  // cut the only link to the leader: still runs, but warns
  sim::SimConfig cfg = sim::preset("desk-5auv");
  Eigen::MatrixXd a = cfg.topology.adjacency;
  for (int i = 1; i < a.rows(); ++i) a(i, 0) = 0.0;
  cfg.topology = auvfl::graph::build_topology(a);
  const std::vector<std::string> warnings = sim::validate_config(cfg);
  CHECK(!warnings.empty());
}

TEST_CASE("every named vehicle has a physical mass matrix") {
  for (const std::string family : {"auv", "mini"}) {
    for (int i = 1; i <= 5; ++i) {
      const auto p = sim::vehicle_preset(family + std::to_string(i));
      CHECK(auvfl::dynamics::mass_matrix(p).determinant() > 0.0);
    }
  }
}
