#include "auvfl/trace_csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace auvfl::sim {

namespace {

void put(std::string& row, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), ",%.17g", v);
  row += buf;
}

}  // namespace

void write_trace_csv(const SimTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot write '" + path + "'");

  std::string row = "t,x0,y0,psi0,u0,v0,r0";
  static const char* const kAgentCols[] = {
      "x",   "y",   "psi", "u",   "v",   "r",    "chihat0", "chihat1",
      "chihat2", "chihat3", "chihat4", "chihat5", "Aerr", "z1x", "z1y",
      "z1psi", "z2u", "z2v", "z2r", "tau1", "tau2", "tau3", "F1", "F2",
      "F3",  "nn1", "nn2", "nn3", "wn1", "wn2", "wn3"};
  static_assert(sizeof(kAgentCols) / sizeof(kAgentCols[0]) ==
                kTraceColumnsPerAgent);
  for (int i = 1; i <= trace.n_agents(); ++i) {
    for (const char* c : kAgentCols) {
      row += ",a" + std::to_string(i) + "_" + c;
    }
  }
  row += "\n";
  out << row;

  for (int s = 0; s < trace.n_samples(); ++s) {
    row.clear();
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", trace.t[s]);
    row += buf;
    for (int j = 0; j < 6; ++j) put(row, trace.leader_chi(j, s));
    for (const AgentSeries& a : trace.agents) {
      for (int j = 0; j < 3; ++j) put(row, a.eta(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.nu(j, s));
      for (int j = 0; j < 6; ++j) put(row, a.chi_hat(j, s));
      put(row, a.A_err(s));
      for (int j = 0; j < 3; ++j) put(row, a.z1(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.z2(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.tau(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.F(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.nn(j, s));
      for (int j = 0; j < 3; ++j) put(row, a.w_norm(j, s));
    }
    row += "\n";
    out << row;
  }
  if (!out) raise(Errc::IoError, "short write to '" + path + "'");
}

namespace {

std::vector<double> parse_row(const std::string& line, int line_no,
                              const std::string& path) {
  std::vector<double> vals;
  size_t pos = 0;
  while (pos <= line.size()) {
    size_t next = line.find(',', pos);
    if (next == std::string::npos) next = line.size();
    const std::string tok = line.substr(pos, next - pos);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE) {
      raise(Errc::ParseError, path + ":" + std::to_string(line_no) +
                                  ": bad number '" + tok + "'");
    }
    vals.push_back(v);
    pos = next + 1;
    if (next == line.size()) break;
  }
  return vals;
}

}  // namespace

SimTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot read '" + path + "'");

  std::string header;
  if (!std::getline(in, header)) {
    raise(Errc::ParseError, path + ": empty file");
  }
  int n_cols = 1;
  for (char c : header) n_cols += c == ',';
  if (n_cols < kTraceFixedColumns ||
      (n_cols - kTraceFixedColumns) % kTraceColumnsPerAgent != 0) {
    raise(Errc::DimensionMismatch,
          path + ": " + std::to_string(n_cols) +
              " columns does not match 7 + 31 N for any N");
  }
  const int N = (n_cols - kTraceFixedColumns) / kTraceColumnsPerAgent;

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto vals = parse_row(line, line_no, path);
    if (static_cast<int>(vals.size()) != n_cols) {
      raise(Errc::ParseError, path + ":" + std::to_string(line_no) + ": " +
                                  std::to_string(vals.size()) +
                                  " fields, expected " +
                                  std::to_string(n_cols));
    }
    rows.push_back(std::move(vals));
  }

  SimTrace trace;
  const int n = static_cast<int>(rows.size());
  trace.t.resize(n);
  trace.leader_chi.resize(6, n);
  trace.agents.resize(N);
  for (AgentSeries& a : trace.agents) {
    a.eta.resize(3, n);
    a.nu.resize(3, n);
    a.chi_hat.resize(6, n);
    a.A_err.resize(n);
    a.z1.resize(3, n);
    a.z2.resize(3, n);
    a.tau.resize(3, n);
    a.F.resize(3, n);
    a.nn.resize(3, n);
    a.w_norm.resize(3, n);
  }
  trace.adaptation_evals = -1;  // not stored in the CSV

  for (int s = 0; s < n; ++s) {
    const std::vector<double>& v = rows[s];
    int c = 0;
    trace.t[s] = v[c++];
    for (int j = 0; j < 6; ++j) trace.leader_chi(j, s) = v[c++];
    for (AgentSeries& a : trace.agents) {
      for (int j = 0; j < 3; ++j) a.eta(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.nu(j, s) = v[c++];
      for (int j = 0; j < 6; ++j) a.chi_hat(j, s) = v[c++];
      a.A_err(s) = v[c++];
      for (int j = 0; j < 3; ++j) a.z1(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.z2(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.tau(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.F(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.nn(j, s) = v[c++];
      for (int j = 0; j < 3; ++j) a.w_norm(j, s) = v[c++];
    }
  }
  return trace;
}

}  // namespace auvfl::sim
