#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <vector>

#include "auvfl/errors.hpp"
#include "auvfl/graph.hpp"

using auvfl::Errc;
using auvfl::Error;
namespace graph = auvfl::graph;

namespace {

// Runs f and returns the library error code it threw, if any.
template <class F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Leader -> follower 1 -> follower 2, unit weights.
Eigen::MatrixXd chain3() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 0) = 1.0;
  a(2, 1) = 1.0;
  return a;
}

// Reference reachability: can every node be reached from node 0 following
// the direction information flows (edge j -> i when a(i, j) > 0)?
bool bfs_all_reached(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int j = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      if (!seen[i] && a(i, j) > 0.0) {
        seen[i] = 1;
        queue.push_back(i);
      }
    }
  }
  for (char s : seen) {
    if (!s) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("laplacian of the three-node chain, by hand") {
  const graph::LaplacianPair lp = graph::laplacian(graph::build_topology(chain3()));

  Eigen::MatrixXd L(3, 3);
  L << 0, 0, 0,
      -1, 1, 0,
       0, -1, 1;
  CHECK((lp.laplacian - L).norm() == 0.0);

  Eigen::MatrixXd H(2, 2);
  H << 1, 0,
      -1, 1;
  CHECK((lp.H - H).norm() == 0.0);

  REQUIRE(lp.psi_diag.size() == 2);
  CHECK(lp.psi_diag(0) == 1.0);  // follower 1 is pinned to the leader
  CHECK(lp.psi_diag(1) == 0.0);  // follower 2 is not
}

TEST_CASE("laplacian respects edge weights") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 0) = 2.5;
  a(2, 0) = 0.5;
  a(2, 1) = 1.5;
  const graph::LaplacianPair lp = graph::laplacian(graph::build_topology(a));

  Eigen::MatrixXd L(3, 3);
  L << 0, 0, 0,
      -2.5, 2.5, 0,
      -0.5, -1.5, 2.0;
  CHECK((lp.laplacian - L).norm() == 0.0);

  Eigen::MatrixXd H(2, 2);
  H << 2.5, 0,
      -1.5, 2.0;
  CHECK((lp.H - H).norm() == 0.0);
  CHECK(lp.psi_diag(0) == 2.5);
  CHECK(lp.psi_diag(1) == 0.5);
}

TEST_CASE("leader row is forced to zero") {
  Eigen::MatrixXd a = chain3();
  a(0, 1) = 3.0;  // a stray "leader listens to follower" weight
  a(0, 2) = 0.25;
  const graph::Topology t = graph::build_topology(a);
  CHECK(t.adjacency.row(0).isZero(0.0));
  // the follower rows are untouched
  CHECK(t.adjacency(1, 0) == 1.0);
  CHECK(t.adjacency(2, 1) == 1.0);
  CHECK(t.n_nodes() == 3);
  CHECK(t.n_followers() == 2);
}

TEST_CASE("adjacency validation") {
  CHECK(thrown_code([] {
          graph::build_topology(Eigen::MatrixXd::Zero(2, 3));
        }) == Errc::NonSquareAdjacency);

  Eigen::MatrixXd neg = chain3();
  neg(1, 0) = -1.0;
  CHECK(thrown_code([&] { graph::build_topology(neg); }) ==
        Errc::NegativeEdgeWeight);

  Eigen::MatrixXd loop = chain3();
  loop(1, 1) = 0.5;
  CHECK(thrown_code([&] { graph::build_topology(loop); }) == Errc::SelfLoop);
}

TEST_CASE("spanning tree detection on hand-built digraphs") {
  CHECK(graph::has_leader_rooted_spanning_tree(graph::build_topology(chain3())));

  // follower 2 hears nobody
  Eigen::MatrixXd isolated = Eigen::MatrixXd::Zero(3, 3);
  isolated(1, 0) = 1.0;
  CHECK_FALSE(
      graph::has_leader_rooted_spanning_tree(graph::build_topology(isolated)));

  // followers talk to each other but nobody hears the leader
  Eigen::MatrixXd orphan = Eigen::MatrixXd::Zero(3, 3);
  orphan(1, 2) = 1.0;
  orphan(2, 1) = 1.0;
  CHECK_FALSE(
      graph::has_leader_rooted_spanning_tree(graph::build_topology(orphan)));

  // one pinned follower relays to the other two
  Eigen::MatrixXd relay = Eigen::MatrixXd::Zero(4, 4);
  relay(1, 0) = 0.7;
  relay(2, 1) = 1.2;
  relay(3, 1) = 0.4;
  relay(3, 2) = 2.0;  // extra edge must not break anything
  CHECK(graph::has_leader_rooted_spanning_tree(graph::build_topology(relay)));
}

TEST_CASE("spanning tree matches reference reachability on random digraphs") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int n = 2; n <= 5; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j && coin(rng) < 0.35) a(i, j) = 1.0;
        }
      }
      const graph::Topology t = graph::build_topology(a);
      CHECK(graph::has_leader_rooted_spanning_tree(t) == bfs_all_reached(a));
    }
  }
}

TEST_CASE("laplacian rows sum to zero on random weighted digraphs") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> weight(0.0, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j && coin(rng) < 0.5) a(i, j) = weight(rng);
        }
      }
      const graph::LaplacianPair lp = graph::laplacian(graph::build_topology(a));
      const Eigen::VectorXd row_sums =
          lp.laplacian * Eigen::VectorXd::Ones(n);
      CHECK(row_sums.cwiseAbs().maxCoeff() < 1e-12);
      // H's diagonal carries each follower's full in-degree, so H * 1 equals
      // the leader pinning weights
      const Eigen::VectorXd h1 = lp.H * Eigen::VectorXd::Ones(n - 1);
      CHECK((h1 - lp.psi_diag).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
