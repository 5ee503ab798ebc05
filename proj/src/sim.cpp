#include "auvfl/sim.hpp"

#include <cmath>
#include <filesystem>

#include "auvfl/controller.hpp"
#include "auvfl/estimator.hpp"

namespace auvfl::sim {

using dynamics::Mat6;
using dynamics::Vec3;
using dynamics::Vec6;

Eigen::VectorXd step_rk4(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& derivative_fn,
    const Eigen::VectorXd& state, double dt) {
  Rk4Scratch scratch;
  Eigen::VectorXd out(state.size());
  rk4_step_into(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        dx = derivative_fn(x);
      },
      state, dt, out, scratch);
  if (!out.allFinite()) {
    Eigen::Index bad = 0;
    while (bad < out.size() && std::isfinite(out(bad))) ++bad;
    raise(Errc::NonFiniteState,
          "component " + std::to_string(bad) + " non-finite after step");
  }
  return out;
}

namespace {

// Controller internals captured at recorded samples only; the integration
// path never touches this.
struct Diag {
  Vec3 z1, z2, tau, F, nn;
};

// Load one agent's weight file and check it matches the scenario's grid.
Eigen::MatrixXd load_agent_weights(const SimConfig& cfg,
                                   const std::string& prefix, int i) {
  const std::string path = prefix + std::to_string(i + 1) + ".rbfw";
  if (!std::filesystem::exists(path)) {
    raise(Errc::MissingWeightsFile,
          "agent " + std::to_string(i + 1) + " weights '" + path + "'");
  }
  rbf::RbfNetwork net = rbf::load_weights(path);
  if (net.bounds != cfg.nn.bounds || net.counts != cfg.nn.counts ||
      net.width != cfg.nn.width) {
    raise(Errc::ValidationError,
          "'" + path + "' was trained on a different grid than the "
          "scenario's [nn] section");
  }
  return std::move(net.weights);
}

class Engine {
 public:
  explicit Engine(const SimConfig& cfg) : cfg_(cfg) {
    lay_.n_agents = cfg.n_agents();
    lay_.learn = cfg.mode == ControllerMode::adaptive;
    grid_ = rbf::build_grid_network(cfg.nn.bounds, cfg.nn.counts, cfg.nn.width);
    lay_.nodes = grid_.n_nodes();
    S_.resize(lay_.nodes);
    Z_.resize(cfg.nn.input == NnInput::nu ? 3 : 6);
    W_.resize(lay_.nodes, 3);
    if (!lay_.learn) load_frozen_weights();
  }

  const Layout& layout() const { return lay_; }
  const rbf::RbfNetwork& grid() const { return grid_; }
  long long adaptation_evals() const { return adaptation_evals_; }
  const Eigen::MatrixXd& frozen_weights(int agent) const {
    return frozen_[agent];
  }

  // One evaluation of the coupled right-hand side.  Order is fixed: leader,
  // all observer rates, then per agent (second derivative -> controller ->
  // plant -> adaptation).  Later blocks read earlier dx blocks, never the
  // other way around, so a per-agent fan-out over a snapshot would see the
  // same values; we stay sequential for bit-stable reductions.
  void derivative(const Eigen::VectorXd& x, Eigen::VectorXd& dx,
                  std::vector<Diag>* diag) {
    const int N = lay_.n_agents;
    dx.head<6>() = cfg_.leader.A0 * x.head<6>();

    auto chi_of = [&](int j) -> Vec6 {
      return j == 0 ? Vec6(x.head<6>())
                    : Vec6(x.segment<6>(lay_.obs(j - 1)));
    };
    auto A_of = [&](int j) -> Mat6 {
      return j == 0 ? cfg_.leader.A0
                    : Mat6(Eigen::Map<const Mat6>(x.data() + lay_.obs(j - 1) +
                                                  6));
    };
    for (int i = 1; i <= N; ++i) {
      const Vec6 chi_i = x.segment<6>(lay_.obs(i - 1));
      const Mat6 A_i = Eigen::Map<const Mat6>(x.data() + lay_.obs(i - 1) + 6);
      Eigen::Map<Vec6> chi_dot(dx.data() + lay_.obs(i - 1));
      Eigen::Map<Mat6> A_dot(dx.data() + lay_.obs(i - 1) + 6);
      estimator::observer_rates_core(i, chi_i, A_i, chi_of, A_of,
                                     cfg_.topology, cfg_.observer, chi_dot,
                                     A_dot);
    }

    auto chi_dot_of = [&](int j) -> Vec6 {
      return j == 0 ? Vec6(dx.head<6>())
                    : Vec6(dx.segment<6>(lay_.obs(j - 1)));
    };
    for (int i = 1; i <= N; ++i) {
      const AgentConfig& agent = cfg_.agents[i - 1];
      dynamics::AgentState s;
      s.eta = x.segment<3>(lay_.plant(i - 1));
      s.nu = x.segment<3>(lay_.plant(i - 1) + 3);

      const Vec6 chi_i = x.segment<6>(lay_.obs(i - 1));
      const Mat6 A_i = Eigen::Map<const Mat6>(x.data() + lay_.obs(i - 1) + 6);
      const Vec6 chi_dot_i = dx.segment<6>(lay_.obs(i - 1));
      const Mat6 A_dot_i =
          Eigen::Map<const Mat6>(dx.data() + lay_.obs(i - 1) + 6);
      const Vec6 chi_ddot_i = estimator::observer_accel_core(
          i, chi_i, A_i, chi_dot_i, A_dot_i, chi_dot_of, cfg_.topology,
          cfg_.observer);

      const Vec3 eta_hat_d = chi_i.head<3>() + agent.d_star;
      const Vec3 eta_hat_d_dot = chi_dot_i.head<3>();
      const Vec3 eta_hat_d_ddot = chi_ddot_i.head<3>();
      const controller::BacksteppingErrors e = controller::backstepping_errors(
          s, eta_hat_d, eta_hat_d_dot, cfg_.gains);

      if (cfg_.nn.input == NnInput::nu) {
        Z_ = s.nu;
      } else {
        Z_.head<3>() = s.eta;
        Z_.tail<3>() = s.nu;
      }
      rbf::regressor_lattice(grid_.axes, grid_.width, Z_, S_);

      Vec3 nn_out;
      if (lay_.learn) {
        W_ = Eigen::Map<const Eigen::MatrixXd>(x.data() + lay_.weights(i - 1),
                                               lay_.nodes, 3);
        nn_out = W_.transpose() * S_;
      } else {
        nn_out = frozen_[i - 1].transpose() * S_;
      }
      const Vec3 tau = controller::feedback_control(e.z1, e.z2, s.eta(2),
                                                    cfg_.gains.K2, nn_out);

      const dynamics::StateDerivative pd = dynamics::vehicle_derivative(
          agent.params, s, tau, cfg_.sim.skew_c32);
      dx.segment<3>(lay_.plant(i - 1)) = pd.eta_dot;
      dx.segment<3>(lay_.plant(i - 1) + 3) = pd.nu_dot;

      if (lay_.learn) {
        Eigen::Map<Eigen::MatrixXd> W_dot(dx.data() + lay_.weights(i - 1),
                                          lay_.nodes, 3);
        controller::adaptation_core(S_, e.z2, cfg_.gains.Gamma,
                                    cfg_.gains.sigma, W_, W_dot);
        ++adaptation_evals_;
      }

      if (diag) {
        Diag& d = (*diag)[i - 1];
        d.z1 = e.z1;
        d.z2 = e.z2;
        d.tau = tau;
        d.nn = nn_out;
        const Vec3 adot = controller::alpha_dot(s, e.z1, eta_hat_d_dot,
                                                eta_hat_d_ddot, cfg_.gains);
        d.F = controller::true_nonlinearity_oracle(agent.params, s, adot,
                                                   cfg_.sim.skew_c32);
      }
    }
  }

 private:
  void load_frozen_weights() {
    for (int i = 0; i < lay_.n_agents; ++i) {
      frozen_.push_back(load_agent_weights(cfg_, cfg_.weights_prefix, i));
    }
  }

  const SimConfig& cfg_;
  Layout lay_;
  rbf::RbfNetwork grid_;                // geometry only; weights stay zero
  std::vector<Eigen::MatrixXd> frozen_;  // pretrained mode
  Eigen::VectorXd S_;                   // regressor scratch
  Eigen::VectorXd Z_;                   // network input scratch
  Eigen::MatrixXd W_;                   // aligned copy of the weight block
  long long adaptation_evals_ = 0;
};

// Human-readable name for a state-vector index, for NonFiniteState messages.
std::string component_name(const Layout& lay, Eigen::Index idx) {
  if (idx < 6) return "leader chi0[" + std::to_string(idx) + "]";
  for (int i = 0; i < lay.n_agents; ++i) {
    const Eigen::Index p = lay.plant(i);
    if (idx < p + 6) {
      return "agent " + std::to_string(i + 1) +
             (idx < p + 3 ? " eta[" + std::to_string(idx - p) + "]"
                          : " nu[" + std::to_string(idx - p - 3) + "]");
    }
  }
  for (int i = 0; i < lay.n_agents; ++i) {
    const Eigen::Index o = lay.obs(i);
    if (idx < o + 42) {
      return "agent " + std::to_string(i + 1) +
             (idx < o + 6 ? " chi_hat[" + std::to_string(idx - o) + "]"
                          : " A_hat[" + std::to_string(idx - o - 6) + "]");
    }
  }
  for (int i = 0; i < lay.n_agents; ++i) {
    const Eigen::Index w = lay.weights(i);
    if (idx < w + 3 * lay.nodes) {
      return "agent " + std::to_string(i + 1) + " weights[" +
             std::to_string(idx - w) + "]";
    }
  }
  return "state[" + std::to_string(idx) + "]";
}

}  // namespace

SimTrace run_scenario(const SimConfig& cfg) {
  SimTrace trace;
  trace.warnings = validate_config(cfg);
  trace.nn = cfg.nn;

  Engine eng(cfg);
  const Layout& lay = eng.layout();
  const int N = lay.n_agents;
  const double dt = cfg.sim.dt;
  const long n_steps = std::lround(cfg.sim.t_end / dt);
  const int dec = cfg.sim.decimation;
  const int n_samples = static_cast<int>(n_steps / dec) + 1;

  // initial conditions: plants per scenario, observers at zero, weights at
  // zero unless the scenario warm-starts them from saved files
  Eigen::VectorXd x = Eigen::VectorXd::Zero(lay.size());
  x.head<6>() = cfg.leader.chi0;
  for (int i = 0; i < N; ++i) {
    x.segment<3>(lay.plant(i)) = cfg.agents[i].eta0;
    x.segment<3>(lay.plant(i) + 3) = cfg.agents[i].nu0;
  }
  if (lay.learn && !cfg.warm_start_prefix.empty()) {
    for (int i = 0; i < N; ++i) {
      const Eigen::MatrixXd w0 =
          load_agent_weights(cfg, cfg.warm_start_prefix, i);
      Eigen::Map<Eigen::MatrixXd>(x.data() + lay.weights(i), lay.nodes, 3) =
          w0;
    }
  }

  trace.t.resize(n_samples);
  trace.leader_chi.resize(6, n_samples);
  trace.agents.resize(N);
  for (AgentSeries& a : trace.agents) {
    a.eta.resize(3, n_samples);
    a.nu.resize(3, n_samples);
    a.chi_hat.resize(6, n_samples);
    a.A_err.resize(n_samples);
    a.z1.resize(3, n_samples);
    a.z2.resize(3, n_samples);
    a.tau.resize(3, n_samples);
    a.F.resize(3, n_samples);
    a.nn.resize(3, n_samples);
    a.w_norm.resize(3, n_samples);
  }
  trace.weights.resize(lay.learn ? N : 0);

  std::vector<Diag> diag(N);
  Eigen::VectorXd dx_diag(lay.size());
  auto record = [&](long k) {
    const int si = static_cast<int>(k / dec);
    const double t = static_cast<double>(k) * dt;
    eng.derivative(x, dx_diag, &diag);
    trace.t[si] = t;
    trace.leader_chi.col(si) = x.head<6>();
    for (int i = 0; i < N; ++i) {
      AgentSeries& a = trace.agents[i];
      a.eta.col(si) = x.segment<3>(lay.plant(i));
      a.nu.col(si) = x.segment<3>(lay.plant(i) + 3);
      a.chi_hat.col(si) = x.segment<6>(lay.obs(i));
      a.A_err(si) =
          (Eigen::Map<const Mat6>(x.data() + lay.obs(i) + 6) - cfg.leader.A0)
              .norm();
      a.z1.col(si) = diag[i].z1;
      a.z2.col(si) = diag[i].z2;
      a.tau.col(si) = diag[i].tau;
      a.F.col(si) = diag[i].F;
      a.nn.col(si) = diag[i].nn;
      if (lay.learn) {
        Eigen::Map<const Eigen::MatrixXd> W(x.data() + lay.weights(i),
                                            lay.nodes, 3);
        for (int k3 = 0; k3 < 3; ++k3) a.w_norm(k3, si) = W.col(k3).norm();
        if (si % cfg.sim.weight_stride == 0) {
          trace.weights[i].t.push_back(t);
          trace.weights[i].w.push_back(W);
        }
      } else {
        for (int k3 = 0; k3 < 3; ++k3) {
          a.w_norm(k3, si) = eng.frozen_weights(i).col(k3).norm();
        }
      }
    }
  };

  Rk4Scratch scratch;
  Eigen::VectorXd x_next(lay.size());
  auto f = [&](const Eigen::VectorXd& xs, Eigen::VectorXd& dxs) {
    eng.derivative(xs, dxs, nullptr);
  };
  for (long k = 0;; ++k) {
    if (k % dec == 0 && k / dec < n_samples) record(k);
    if (k == n_steps) break;
    rk4_step_into(f, x, dt, x_next, scratch);
    if (!x_next.allFinite()) {
      Eigen::Index bad = 0;
      while (bad < x_next.size() && std::isfinite(x_next(bad))) ++bad;
      raise(Errc::NonFiniteState,
            component_name(lay, bad) + " non-finite at t = " +
                std::to_string(static_cast<double>(k + 1) * dt) + " s");
    }
    x.swap(x_next);
  }
  trace.adaptation_evals = eng.adaptation_evals();
  return trace;
}

std::vector<std::string> export_learned_weights(const SimTrace& trace,
                                                double t_a, double t_b,
                                                const std::string& prefix) {
  if (trace.weights.empty()) {
    raise(Errc::EmptyWindow,
          "trace carries no weight snapshots (pretrained run?)");
  }
  rbf::RbfNetwork net =
      rbf::build_grid_network(trace.nn.bounds, trace.nn.counts,
                              trace.nn.width);
  std::vector<std::string> paths;
  for (size_t i = 0; i < trace.weights.size(); ++i) {
    net.weights = rbf::average_weights(trace.weights[i], t_a, t_b);
    const std::string path = prefix + std::to_string(i + 1) + ".rbfw";
    rbf::save_weights(net, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace auvfl::sim
