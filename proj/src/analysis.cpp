#include "auvfl/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace auvfl::analysis {

namespace {

int tail_begin_index(int n) { return n - std::max(1, n / 4); }

void need_samples(const sim::SimTrace& trace) {
  if (trace.n_samples() == 0 || trace.n_agents() == 0) {
    raise(Errc::MissingOracleSeries, "trace is empty");
  }
}

}  // namespace

FormationErrors formation_error_series(
    const sim::SimTrace& trace, const std::vector<dynamics::Vec3>& offsets) {
  need_samples(trace);
  const int N = trace.n_agents();
  if (static_cast<int>(offsets.size()) != N) {
    raise(Errc::DimensionMismatch,
          std::to_string(offsets.size()) + " offsets for " +
              std::to_string(N) + " agents");
  }
  const int n = trace.n_samples();
  const int tb = tail_begin_index(n);
  FormationErrors out;
  out.err.resize(N);
  out.mean_tail.resize(N);
  out.max_tail.resize(N);
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXd& e = out.err[i];
    e.resize(n);
    for (int s = 0; s < n; ++s) {
      e(s) = (trace.agents[i].eta.col(s) -
              (trace.leader_chi.col(s).head<3>() + offsets[i]))
                 .norm();
    }
    out.mean_tail(i) = e.tail(n - tb).mean();
    out.max_tail(i) = e.tail(n - tb).maxCoeff();
  }
  return out;
}

double transient_time(const sim::SimTrace& trace,
                      const std::vector<dynamics::Vec3>& offsets,
                      double factor) {
  const FormationErrors fe = formation_error_series(trace, offsets);
  const int n = trace.n_samples();
  const int tb = tail_begin_index(n);
  double t_trans = trace.t.front();
  for (int i = 0; i < trace.n_agents(); ++i) {
    const double thr = factor * fe.mean_tail(i);
    int v = -1;  // last index violating the bound
    for (int s = n - 1; s >= 0; --s) {
      if (fe.err[i](s) > thr) {
        v = s;
        break;
      }
    }
    const double ti = (v == n - 1) ? trace.t[tb]
                                   : (v < 0 ? trace.t.front() : trace.t[v + 1]);
    t_trans = std::max(t_trans, ti);
  }
  return t_trans;
}

double orbit_radius(const sim::SimTrace& trace) {
  need_samples(trace);
  return trace.leader_chi.topRows<2>().cwiseAbs().maxCoeff();
}

std::vector<DecayFit> observer_decay_fit(const sim::SimTrace& trace,
                                         double start_rel, double floor_rel,
                                         int min_samples) {
  need_samples(trace);
  const int n = trace.n_samples();
  std::vector<DecayFit> fits;
  for (int i = 0; i < trace.n_agents(); ++i) {
    Eigen::VectorXd e(n);
    for (int s = 0; s < n; ++s) {
      e(s) = (trace.agents[i].chi_hat.col(s) - trace.leader_chi.col(s)).norm();
    }
    int peak = 0;
    e.maxCoeff(&peak);
    int begin = peak;
    while (begin + 1 < n && e(begin) > start_rel * e(peak)) ++begin;
    const double floor = floor_rel * e(peak);
    int last = begin;
    while (last + 1 < n && e(last + 1) > floor) ++last;
    const int m = last - begin + 1;
    if (m < min_samples) {
      raise(Errc::DegenerateSegment,
            "agent " + std::to_string(i + 1) + ": only " + std::to_string(m) +
                " samples between the error peak and the numerical floor");
    }
    // least squares line through (t, log e)
    double St = 0, Sy = 0, Stt = 0, Sty = 0;
    for (int s = begin; s <= last; ++s) {
      if (!(e(s) > 0.0)) {
        raise(Errc::DegenerateSegment,
              "agent " + std::to_string(i + 1) +
                  ": estimate error hits exact zero at t = " +
                  std::to_string(trace.t[s]));
      }
      const double y = std::log(e(s));
      St += trace.t[s];
      Sy += y;
      Stt += trace.t[s] * trace.t[s];
      Sty += trace.t[s] * y;
    }
    const double det = m * Stt - St * St;
    DecayFit f;
    f.t_begin = trace.t[begin];
    f.t_end = trace.t[last];
    if (det <= 0.0) {
      raise(Errc::DegenerateSegment,
            "agent " + std::to_string(i + 1) + ": zero-length fit window");
    }
    f.rate = (m * Sty - St * Sy) / det;
    const double b = (Sy - f.rate * St) / m;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = Sy / m;
    for (int s = begin; s <= last; ++s) {
      const double y = std::log(e(s));
      ss_res += (y - (f.rate * trace.t[s] + b)) * (y - (f.rate * trace.t[s] + b));
      ss_tot += (y - mean_y) * (y - mean_y);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    fits.push_back(f);
  }
  return fits;
}

namespace {

ChannelStats stats_of(std::vector<double>& v) {
  ChannelStats cs;
  if (v.empty()) return cs;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  cs.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  const size_t r = static_cast<size_t>(std::ceil(0.95 * static_cast<double>(n)));
  cs.p95 = v[r > 0 ? r - 1 : 0];
  return cs;
}

}  // namespace

std::vector<AgentApproxReport> approximation_report(
    const sim::SimTrace& trace, const std::vector<Eigen::MatrixXd>& w_bar,
    const rbf::RbfNetwork& net, double t_from, int subsample,
    const Eigen::Vector3d& ridge) {
  need_samples(trace);
  const int N = trace.n_agents();
  const int n = trace.n_samples();
  if (!w_bar.empty() && static_cast<int>(w_bar.size()) != N) {
    raise(Errc::DimensionMismatch,
          std::to_string(w_bar.size()) + " weight sets for " +
              std::to_string(N) + " agents");
  }
  if (subsample < 1) subsample = 1;

  std::vector<int> post;
  for (int s = 0; s < n; ++s) {
    if (trace.t[s] >= t_from) post.push_back(s);
  }
  if (post.empty()) {
    raise(Errc::MissingOracleSeries,
          "no samples at or after t = " + std::to_string(t_from));
  }

  const int q = net.input_dim();
  if (q != 3 && q != 6) {
    raise(Errc::DimensionMismatch,
          "network input must be 3-D (nu) or 6-D (eta,nu), got " +
              std::to_string(q) + "-D");
  }

  std::vector<AgentApproxReport> reports(N);
  Eigen::VectorXd Z(q), S(net.n_nodes());
  const int n_post = static_cast<int>(post.size());
  const int n_fit = (n_post + subsample - 1) / subsample;
  Eigen::MatrixXd Phi(n_fit, net.n_nodes());
  Eigen::MatrixXd rhs(n_fit, 3);
  Eigen::MatrixXd pred_frozen(3, n_post), pred_lsq(3, n_post);

  for (int i = 0; i < N; ++i) {
    const sim::AgentSeries& a = trace.agents[i];
    if (!w_bar.empty() &&
        (w_bar[i].rows() != net.n_nodes() || w_bar[i].cols() != 3)) {
      raise(Errc::DimensionMismatch,
            "agent " + std::to_string(i + 1) + " weights are " +
                std::to_string(w_bar[i].rows()) + "x" +
                std::to_string(w_bar[i].cols()) + ", grid wants " +
                std::to_string(net.n_nodes()) + "x3");
    }

    int fit_row = 0;
    std::vector<Eigen::VectorXd> regressors(n_post);
    for (int p = 0; p < n_post; ++p) {
      const int s = post[p];
      if (q == 3) {
        Z = a.nu.col(s);
      } else {
        Z.head<3>() = a.eta.col(s);
        Z.tail<3>() = a.nu.col(s);
      }
      rbf::regressor_lattice(net.axes, net.width, Z, S);
      regressors[p] = S;
      if (p % subsample == 0) {
        Phi.row(fit_row) = S.transpose();
        rhs.row(fit_row) = a.F.col(s).transpose();
        ++fit_row;
      }
    }
    // Ridge least squares: the best the grid could do on this orbit.  The
    // Gram matrix is badly rank-deficient (a closed orbit excites a sliver
    // of the lattice), so an unregularized solve interpolates wildly between
    // fitted samples; a whisper of Tikhonov keeps the answer physical even
    // when the caller asks for the raw floor (ridge = 0).
    const Eigen::MatrixXd Phi_f = Phi.topRows(fit_row);
    const Eigen::MatrixXd gram0 = Phi_f.transpose() * Phi_f;
    const Eigen::MatrixXd prhs = Phi_f.transpose() * rhs.topRows(fit_row);
    const double jitter = std::max(
        1e-8 * gram0.trace() / static_cast<double>(net.n_nodes()), DBL_MIN);
    Eigen::MatrixXd w_lsq(net.n_nodes(), 3);
    for (int k = 0; k < 3; ++k) {
      Eigen::MatrixXd gram = gram0;
      gram.diagonal().array() += jitter + ridge(k) * fit_row;
      w_lsq.col(k) = gram.ldlt().solve(prhs.col(k));
    }

    for (int p = 0; p < n_post; ++p) {
      pred_lsq.col(p) = w_lsq.transpose() * regressors[p];
      if (!w_bar.empty()) {
        pred_frozen.col(p) = w_bar[i].transpose() * regressors[p];
      }
    }

    for (int k = 0; k < 3; ++k) {
      std::vector<double> ef, eo, el;
      ef.reserve(n_post);
      eo.reserve(n_post);
      el.reserve(n_post);
      for (int p = 0; p < n_post; ++p) {
        const int s = post[p];
        const double denom = 1.0 + std::abs(a.F(k, s));
        if (!w_bar.empty()) {
          ef.push_back(std::abs(pred_frozen(k, p) - a.F(k, s)) / denom);
        }
        eo.push_back(std::abs(a.nn(k, s) - a.F(k, s)) / denom);
        el.push_back(std::abs(pred_lsq(k, p) - a.F(k, s)) / denom);
      }
      reports[i].frozen[k] = stats_of(ef);
      reports[i].online[k] = stats_of(eo);
      reports[i].lsq[k] = stats_of(el);
    }
  }
  return reports;
}

LyapunovDiagnostic lyapunov_diagnostic(
    const sim::SimTrace& trace,
    const std::vector<dynamics::VehicleParams>& params, double t_from) {
  need_samples(trace);
  const int N = trace.n_agents();
  if (static_cast<int>(params.size()) != N) {
    raise(Errc::DimensionMismatch,
          std::to_string(params.size()) + " parameter sets for " +
              std::to_string(N) + " agents");
  }
  const int n = trace.n_samples();
  LyapunovDiagnostic out;
  out.V.resize(N);
  out.frac_decreasing.resize(N);
  for (int i = 0; i < N; ++i) {
    const dynamics::Mat3 M = dynamics::mass_matrix(params[i]);
    Eigen::VectorXd& V = out.V[i];
    V.resize(n);
    for (int s = 0; s < n; ++s) {
      const dynamics::Vec3 z1 = trace.agents[i].z1.col(s);
      const dynamics::Vec3 z2 = trace.agents[i].z2.col(s);
      V(s) = 0.5 * z1.dot(z1) + 0.5 * z2.dot(M * z2);
    }
    long pairs = 0, down = 0;
    for (int s = 1; s < n; ++s) {
      if (trace.t[s - 1] < t_from) continue;
      ++pairs;
      if (V(s) < V(s - 1)) ++down;
    }
    out.frac_decreasing(i) =
        pairs > 0 ? static_cast<double>(down) / static_cast<double>(pairs)
                  : 0.0;
  }
  return out;
}

ConvergenceReport build_report(const sim::SimTrace& trace,
                               const std::vector<dynamics::Vec3>& offsets,
                               const std::vector<dynamics::VehicleParams>& params,
                               const std::vector<Eigen::MatrixXd>& w_bar,
                               const Thresholds& th) {
  need_samples(trace);
  const int N = trace.n_agents();
  const int n = trace.n_samples();
  const int tb = tail_begin_index(n);

  ConvergenceReport r;
  r.thresholds = th;
  r.orbit_radius = orbit_radius(trace);
  r.transient_end = transient_time(trace, offsets);

  r.chi_err_initial.resize(N);
  r.chi_err_final.resize(N);
  r.A_err_initial.resize(N);
  r.A_err_final.resize(N);
  for (int i = 0; i < N; ++i) {
    const sim::AgentSeries& a = trace.agents[i];
    r.chi_err_initial(i) = (a.chi_hat.col(0) - trace.leader_chi.col(0)).norm();
    r.chi_err_final(i) =
        (a.chi_hat.col(n - 1) - trace.leader_chi.col(n - 1)).norm();
    r.A_err_initial(i) = a.A_err(0);
    r.A_err_final(i) = a.A_err(n - 1);
  }
  r.observer_fit = observer_decay_fit(trace);

  const FormationErrors fe = formation_error_series(trace, offsets);
  r.formation_mean_tail = fe.mean_tail;
  r.formation_max_tail = fe.max_tail;

  // weight drift over the final quartile: snapshot vectors when available,
  // recorded norms otherwise
  r.weight_drift.resize(N, 3);
  for (int i = 0; i < N; ++i) {
    const bool have_snaps =
        i < static_cast<int>(trace.weights.size()) &&
        trace.weights[i].w.size() >= 2;
    if (have_snaps) {
      const rbf::WeightSeries& ws = trace.weights[i];
      int a = -1;
      for (size_t s = 0; s < ws.t.size(); ++s) {
        if (ws.t[s] >= trace.t[tb]) {
          a = static_cast<int>(s);
          break;
        }
      }
      if (a < 0 || a + 1 >= static_cast<int>(ws.w.size())) {
        a = static_cast<int>(ws.w.size()) - 2;
      }
      const Eigen::MatrixXd& Wa = ws.w[a];
      const Eigen::MatrixXd& Wb = ws.w.back();
      for (int k = 0; k < 3; ++k) {
        r.weight_drift(i, k) = (Wb.col(k) - Wa.col(k)).norm() /
                               std::max(Wb.col(k).norm(), DBL_MIN);
      }
    } else {
      for (int k = 0; k < 3; ++k) {
        const double wa = trace.agents[i].w_norm(k, tb);
        const double wb = trace.agents[i].w_norm(k, n - 1);
        r.weight_drift(i, k) = std::abs(wb - wa) / std::max(wb, DBL_MIN);
      }
    }
  }

  if (!trace.nn.counts.empty()) {
    const rbf::RbfNetwork net = rbf::build_grid_network(
        trace.nn.bounds, trace.nn.counts, trace.nn.width);
    r.approx = approximation_report(trace, w_bar, net, r.transient_end, 4,
                                    th.lsq_ridge);
  }
  r.lyapunov = lyapunov_diagnostic(trace, params, r.transient_end);

  r.observer_pass = true;
  for (int i = 0; i < N; ++i) {
    const double cr =
        r.chi_err_final(i) / std::max(r.chi_err_initial(i), DBL_MIN);
    const double ar = r.A_err_final(i) / std::max(r.A_err_initial(i), DBL_MIN);
    r.observer_pass = r.observer_pass && cr <= th.observer_ratio &&
                      ar <= th.observer_ratio &&
                      r.observer_fit[i].rate < 0.0 &&
                      r.observer_fit[i].r2 >= th.observer_r2;
  }
  r.formation_pass = true;
  for (int i = 0; i < N; ++i) {
    r.formation_pass = r.formation_pass &&
                       fe.mean_tail(i) <= th.formation_mean_frac * r.orbit_radius &&
                       fe.max_tail(i) <= th.formation_max_frac * r.orbit_radius;
  }
  r.weights_pass = (r.weight_drift.array() <= th.weight_drift).all();
  r.approx_pass = !r.approx.empty() && !w_bar.empty();
  for (const AgentApproxReport& ar : r.approx) {
    for (int k = 0; k < 3 && r.approx_pass; ++k) {
      r.approx_pass = ar.frozen[k].median <= th.approx_median &&
                      ar.frozen[k].median <=
                          th.lsq_factor * std::max(ar.lsq[k].median, DBL_MIN);
    }
  }
  return r;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string report_text(const ConvergenceReport& r) {
  std::ostringstream o;
  o << "transient_end = " << num(r.transient_end) << "\n";
  o << "orbit_radius = " << num(r.orbit_radius) << "\n";
  const int N = static_cast<int>(r.chi_err_initial.size());
  for (int i = 0; i < N; ++i) {
    const std::string p = "agent" + std::to_string(i + 1) + ".";
    o << p << "chi_err_initial = " << num(r.chi_err_initial(i)) << "\n";
    o << p << "chi_err_final = " << num(r.chi_err_final(i)) << "\n";
    o << p << "A_err_initial = " << num(r.A_err_initial(i)) << "\n";
    o << p << "A_err_final = " << num(r.A_err_final(i)) << "\n";
    o << p << "observer_rate = " << num(r.observer_fit[i].rate) << "\n";
    o << p << "observer_r2 = " << num(r.observer_fit[i].r2) << "\n";
    o << p << "formation_mean_tail = " << num(r.formation_mean_tail(i))
      << "\n";
    o << p << "formation_max_tail = " << num(r.formation_max_tail(i)) << "\n";
    o << p << "weight_drift = " << num(r.weight_drift(i, 0)) << " "
      << num(r.weight_drift(i, 1)) << " " << num(r.weight_drift(i, 2)) << "\n";
    if (!r.approx.empty()) {
      const AgentApproxReport& ar = r.approx[i];
      o << p << "approx_frozen_median = " << num(ar.frozen[0].median) << " "
        << num(ar.frozen[1].median) << " " << num(ar.frozen[2].median) << "\n";
      o << p << "approx_online_median = " << num(ar.online[0].median) << " "
        << num(ar.online[1].median) << " " << num(ar.online[2].median) << "\n";
      o << p << "approx_lsq_median = " << num(ar.lsq[0].median) << " "
        << num(ar.lsq[1].median) << " " << num(ar.lsq[2].median) << "\n";
    }
    o << p << "lyapunov_frac_decreasing = "
      << num(r.lyapunov.frac_decreasing(i)) << "\n";
  }
  o << "observer_pass = " << (r.observer_pass ? "true" : "false") << "\n";
  o << "formation_pass = " << (r.formation_pass ? "true" : "false") << "\n";
  o << "weights_pass = " << (r.weights_pass ? "true" : "false") << "\n";
  o << "approx_pass = " << (r.approx_pass ? "true" : "false") << "\n";
  return o.str();
}

namespace {

class FigureWriter {
 public:
  FigureWriter(const std::string& dir, const std::string& name)
      : path_((std::filesystem::path(dir) / name).string()), out_(path_, std::ios::binary) {
    if (!out_) raise(Errc::IoError, "cannot write '" + path_ + "'");
  }
  void header(const std::string& h) { out_ << h << "\n"; }
  void value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    out_ << buf;
  }
  void first(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ << buf;
  }
  void endrow() { out_ << "\n"; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace

std::vector<std::string> write_figure_csvs(
    const sim::SimTrace& trace, const std::vector<dynamics::Vec3>& offsets,
    const std::string& dir) {
  need_samples(trace);
  std::filesystem::create_directories(dir);
  const int N = trace.n_agents();
  const int n = trace.n_samples();
  const FormationErrors fe = formation_error_series(trace, offsets);
  std::vector<std::string> paths;

  auto agent_cols = [&](const std::string& stem,
                        const std::vector<std::string>& fields) {
    std::string h = "t";
    for (int i = 1; i <= N; ++i) {
      for (const auto& f : fields) h += ",a" + std::to_string(i) + "_" + f;
    }
    (void)stem;
    return h;
  };

  {
    FigureWriter w(dir, "observer_errors.csv");
    w.header(agent_cols("obs", {"chi_err", "A_err"}));
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int i = 0; i < N; ++i) {
        w.value((trace.agents[i].chi_hat.col(s) - trace.leader_chi.col(s))
                    .norm());
        w.value(trace.agents[i].A_err(s));
      }
      w.endrow();
    }
    paths.push_back(w.path());
  }
  {
    FigureWriter w(dir, "tracking.csv");
    std::string h = "t,x0,y0,psi0";
    for (int i = 1; i <= N; ++i) {
      h += ",a" + std::to_string(i) + "_x,a" + std::to_string(i) + "_y,a" +
           std::to_string(i) + "_psi,a" + std::to_string(i) + "_xref,a" +
           std::to_string(i) + "_yref,a" + std::to_string(i) + "_psiref";
    }
    w.header(h);
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int j = 0; j < 3; ++j) w.value(trace.leader_chi(j, s));
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < 3; ++j) w.value(trace.agents[i].eta(j, s));
        for (int j = 0; j < 3; ++j) {
          w.value(trace.leader_chi(j, s) + offsets[i](j));
        }
      }
      w.endrow();
    }
    paths.push_back(w.path());
  }
  {
    FigureWriter w(dir, "formation_error.csv");
    w.header(agent_cols("err", {"err"}));
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int i = 0; i < N; ++i) w.value(fe.err[i](s));
      w.endrow();
    }
    paths.push_back(w.path());
  }
  {
    FigureWriter w(dir, "control.csv");
    w.header(agent_cols("tau", {"tau1", "tau2", "tau3"}));
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < 3; ++j) w.value(trace.agents[i].tau(j, s));
      }
      w.endrow();
    }
    paths.push_back(w.path());
  }
  {
    FigureWriter w(dir, "weight_norms.csv");
    w.header(agent_cols("wn", {"wn1", "wn2", "wn3"}));
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < 3; ++j) w.value(trace.agents[i].w_norm(j, s));
      }
      w.endrow();
    }
    paths.push_back(w.path());
  }
  {
    FigureWriter w(dir, "approximation.csv");
    w.header(agent_cols("ap", {"F1", "F2", "F3", "nn1", "nn2", "nn3"}));
    for (int s = 0; s < n; ++s) {
      w.first(trace.t[s]);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < 3; ++j) w.value(trace.agents[i].F(j, s));
        for (int j = 0; j < 3; ++j) w.value(trace.agents[i].nn(j, s));
      }
      w.endrow();
    }
    paths.push_back(w.path());
  }
  return paths;
}

}  // namespace auvfl::analysis
