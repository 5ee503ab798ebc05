#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "auvfl/errors.hpp"
#include "auvfl/scenario.hpp"
#include "auvfl/sim.hpp"
#include "auvfl/trace_csv.hpp"

using auvfl::Errc;
using auvfl::Error;
namespace sim = auvfl::sim;
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

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "auvfl-csv-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

sim::SimTrace tiny_trace() {
  sim::SimConfig cfg = sim::preset("desk-5auv");
  cfg.sim.t_end = 0.03;  // 4 samples
  return sim::run_scenario(cfg);
}

}  // namespace

TEST_CASE("write -> read round trip is bit-exact") {
  const sim::SimTrace tr = tiny_trace();
  const fs::path path = scratch("roundtrip.csv");
  sim::write_trace_csv(tr, path.string());
  const sim::SimTrace back = sim::read_trace_csv(path.string());

  REQUIRE(back.n_samples() == tr.n_samples());
  REQUIRE(back.n_agents() == tr.n_agents());
  for (int i = 0; i < tr.n_samples(); ++i) CHECK(back.t[i] == tr.t[i]);
  CHECK((back.leader_chi - tr.leader_chi).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < tr.n_agents(); ++i) {
    const auto& a = tr.agents[i];
    const auto& b = back.agents[i];
    CHECK((b.eta - a.eta).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.nu - a.nu).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.chi_hat - a.chi_hat).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.A_err - a.A_err).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.z1 - a.z1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.z2 - a.z2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.tau - a.tau).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.F - a.F).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.nn - a.nn).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.w_norm - a.w_norm).cwiseAbs().maxCoeff() == 0.0);
  }

  // the table cannot carry snapshots, the grid spec, or the eval counter
  CHECK(back.weights.empty());
  CHECK(back.adaptation_evals == -1);
  CHECK(back.nn.counts.empty());
}

TEST_CASE("header shape and naming") {
  const sim::SimTrace tr = tiny_trace();
  const fs::path path = scratch("header.csv");
  sim::write_trace_csv(tr, path.string());

  std::ifstream f(path);
  std::string header;
  REQUIRE(std::getline(f, header));

  std::vector<std::string> cols;
  std::stringstream ss(header);
  std::string c;
  while (std::getline(ss, c, ',')) cols.push_back(c);

  REQUIRE(static_cast<int>(cols.size()) ==
          sim::kTraceFixedColumns + 5 * sim::kTraceColumnsPerAgent);
  CHECK(cols[0] == "t");
  CHECK(cols[1] == "x0");
  CHECK(cols[6] == "r0");
  CHECK(cols[7] == "a1_x");
  CHECK(cols.back() == "a5_wn3");
}

TEST_CASE("read failures carry the right codes") {
  CHECK(thrown_code([] {
          sim::read_trace_csv(scratch("never-written.csv").string());
        }) == Errc::IoError);

  const fs::path empty = scratch("empty.csv");
  write_text(empty, "");
  CHECK(thrown_code([&] { sim::read_trace_csv(empty.string()); }) ==
        Errc::ParseError);

  // a column count that fits no agent count
  const fs::path short_hdr = scratch("short.csv");
  write_text(short_hdr, "t,x0,y0,psi0,u0,v0,r0,a1_x,a1_y\n");
  CHECK(thrown_code([&] { sim::read_trace_csv(short_hdr.string()); }) ==
        Errc::DimensionMismatch);

  // row with too few fields
  std::string text = "t,x0,y0,psi0,u0,v0,r0";
  for (int k = 1; k <= sim::kTraceColumnsPerAgent; ++k) {
    text += ",a1_c" + std::to_string(k);
  }
  text += "\n1,2,3\n";
  const fs::path ragged = scratch("ragged.csv");
  write_text(ragged, text);
  CHECK(thrown_code([&] { sim::read_trace_csv(ragged.string()); }) ==
        Errc::ParseError);

  // non-numeric cell
  std::string bad_cell = "t,x0,y0,psi0,u0,v0,r0";
  for (int k = 1; k <= sim::kTraceColumnsPerAgent; ++k) {
    bad_cell += ",a1_c" + std::to_string(k);
  }
  bad_cell += "\n0";
  for (int k = 1; k < sim::kTraceFixedColumns + sim::kTraceColumnsPerAgent;
       ++k) {
    bad_cell += k == 3 ? ",oops" : ",0";
  }
  bad_cell += "\n";
  const fs::path nonnum = scratch("nonnum.csv");
  write_text(nonnum, bad_cell);
  CHECK(thrown_code([&] { sim::read_trace_csv(nonnum.string()); }) ==
        Errc::ParseError);
}

TEST_CASE("write failures surface as IoError") {
  const sim::SimTrace tr = tiny_trace();
  CHECK(thrown_code([&] {
          sim::write_trace_csv(tr, "/no-such-dir/trace.csv");
        }) == Errc::IoError);
}
