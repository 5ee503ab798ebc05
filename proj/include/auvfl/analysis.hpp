#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "auvfl/dynamics.hpp"
#include "auvfl/rbf.hpp"
#include "auvfl/sim.hpp"

namespace auvfl::analysis {

// ---------------------------------------------------------------------------
// Formation tracking

// Per-agent pointwise  ||eta_i(t) - (eta0(t) + d*_i)||  plus mean/max over
// the final quarter of the run.  offsets must have one d* per agent.
struct FormationErrors {
  std::vector<Eigen::VectorXd> err;  // per agent, length n_samples
  Eigen::VectorXd mean_tail;         // per agent, final 25%
  Eigen::VectorXd max_tail;
};
FormationErrors formation_error_series(
    const sim::SimTrace& trace, const std::vector<dynamics::Vec3>& offsets);

// First sample time from which every agent's formation error stays at or
// below `factor` times that agent's final-quartile mean.  Falls back to the
// start of the final quartile if the bound is never held earlier.
double transient_time(const sim::SimTrace& trace,
                      const std::vector<dynamics::Vec3>& offsets,
                      double factor = 2.0);

// Leader orbit radius as seen in the trace: max over samples of
// max(|x0|, |y0|).  Scale reference for the tracking thresholds.
double orbit_radius(const sim::SimTrace& trace);

// ---------------------------------------------------------------------------
// Observer convergence

// Least-squares line through log ||chi_hat_i - chi0|| on a window that
// starts once the error has fallen to start_rel times its peak (early on
// the error is dominated by information still propagating across the graph
// hop by hop, which is not the exponential regime) and stops when it sinks
// below floor_rel times the peak (the estimates bottom out near machine
// epsilon long before a run ends; fitting the flat tail would say "no
// decay").  Throws DegenerateSegment when fewer than min_samples usable
// samples remain or the series is not strictly positive there.
struct DecayFit {
  double rate = 0.0;  // 1/s, negative = converging
  double r2 = 0.0;
  double t_begin = 0.0, t_end = 0.0;  // fitted window
};
std::vector<DecayFit> observer_decay_fit(const sim::SimTrace& trace,
                                         double start_rel = 0.05,
                                         double floor_rel = 1e-12,
                                         int min_samples = 8);

// ---------------------------------------------------------------------------
// Learning accuracy

// Relative error statistics of a prediction series against the recorded true
// nonlinearity, err = |pred - F| / (1 + |F|), over samples with t >= t_from.
struct ChannelStats {
  double median = 0.0;
  double p95 = 0.0;
};

struct AgentApproxReport {
  std::array<ChannelStats, 3> frozen;  // prediction with the given W-bar
  std::array<ChannelStats, 3> online;  // the trace's recorded network output
  std::array<ChannelStats, 3> lsq;     // least-squares floor (see below)
};

// For each agent: evaluates the frozen-weight prediction W-bar^T S(Z(t))
// along the trace, compares the online prediction, and fits per-channel
// least-squares weights on the same (S, F) samples as the best the grid
// could possibly do — the frozen weights can only be as good as that floor.
// Z is rebuilt from the trace per trace.nn.input.  w_bar may be empty
// (frozen stats zeroed, online/lsq still computed); subsample > 1 thins the
// regressor rows for the LSQ fit only.
// ridge adds per-channel Tikhonov weight ridge(k) per fitted sample.  The
// leaky adaptation law settles at a ridge-regularized projection rather than
// the raw best fit, so ridge(k) = sigma(k) * K2(k,k) turns the floor into
// the target that law can actually reach; zero keeps the raw floor.
// Throws MissingOracleSeries (no samples past t_from), DimensionMismatch.
std::vector<AgentApproxReport> approximation_report(
    const sim::SimTrace& trace, const std::vector<Eigen::MatrixXd>& w_bar,
    const rbf::RbfNetwork& net, double t_from, int subsample = 4,
    const Eigen::Vector3d& ridge = Eigen::Vector3d::Zero());

// ---------------------------------------------------------------------------
// Lyapunov diagnostic (soft check; V may rise inside the residual set)

// V_i(t) = 1/2 z1^T z1 + 1/2 z2^T M_i z2 per agent, plus the fraction of
// consecutive post-t_from sample pairs where V decreases.
struct LyapunovDiagnostic {
  std::vector<Eigen::VectorXd> V;   // per agent
  Eigen::VectorXd frac_decreasing;  // per agent, over t >= t_from
};
LyapunovDiagnostic lyapunov_diagnostic(
    const sim::SimTrace& trace,
    const std::vector<dynamics::VehicleParams>& params, double t_from = 0.0);

// ---------------------------------------------------------------------------
// Whole-trace report

struct Thresholds {
  double observer_ratio = 1e-3;     // final/initial estimate-error ratio
  double observer_r2 = 0.99;
  double formation_mean_frac = 0.01;  // of orbit radius
  double formation_max_frac = 0.03;
  double weight_drift = 0.01;       // tail drift relative to final norm
  double approx_median = 0.15;
  double lsq_factor = 3.0;          // frozen error within this of LSQ floor
  // per-channel ridge for the LSQ floor (see approximation_report)
  Eigen::Vector3d lsq_ridge = Eigen::Vector3d::Zero();
};

struct ConvergenceReport {
  double transient_end = 0.0;
  double orbit_radius = 0.0;
  Eigen::VectorXd chi_err_initial, chi_err_final;   // per agent
  Eigen::VectorXd A_err_initial, A_err_final;
  std::vector<DecayFit> observer_fit;
  Eigen::VectorXd formation_mean_tail, formation_max_tail;
  Eigen::MatrixXd weight_drift;  // agents x channels; NaN-free, -1 = unknown
  std::vector<AgentApproxReport> approx;  // empty if trace lacks samples
  LyapunovDiagnostic lyapunov;
  Thresholds thresholds;
  bool observer_pass = false;
  bool formation_pass = false;
  bool weights_pass = false;
  bool approx_pass = false;  // only meaningful when w_bar was supplied
};

// Everything above in one pass.  w_bar: per-agent consolidated weights to
// grade (may be empty).  Weight drift uses the trace's weight snapshots when
// present, else falls back to the recorded norm series.
ConvergenceReport build_report(const sim::SimTrace& trace,
                               const std::vector<dynamics::Vec3>& offsets,
                               const std::vector<dynamics::VehicleParams>& params,
                               const std::vector<Eigen::MatrixXd>& w_bar,
                               const Thresholds& th = {});

// Key-value text rendering, one `name = value` per line, stable order.
std::string report_text(const ConvergenceReport& r);

// Per-figure CSVs (observer errors, tracking, formation error, control,
// weight norms, approximation) under dir; returns the written paths.
std::vector<std::string> write_figure_csvs(const sim::SimTrace& trace,
                                           const std::vector<dynamics::Vec3>& offsets,
                                           const std::string& dir);

}  // namespace auvfl::analysis
