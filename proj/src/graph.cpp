#include "auvfl/graph.hpp"

#include <vector>

namespace auvfl::graph {

Topology build_topology(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols() || weights.rows() < 2) {
    raise(Errc::NonSquareAdjacency,
          "adjacency must be square with at least one follower, got " +
              std::to_string(weights.rows()) + "x" +
              std::to_string(weights.cols()));
  }
  const auto n = weights.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights(i, j);
      if (w < 0.0) {
        raise(Errc::NegativeEdgeWeight,
              "a(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                  std::to_string(w));
      }
      if (i == j && w != 0.0) {
        raise(Errc::SelfLoop, "a(" + std::to_string(i) + "," +
                                  std::to_string(i) + ") must be zero");
      }
    }
  }
  Topology t;
  t.adjacency = weights;
  t.adjacency.row(0).setZero();  // the leader listens to nobody
  return t;
}

LaplacianPair laplacian(const Topology& t) {
  const auto n = t.adjacency.rows();
  LaplacianPair out;
  out.laplacian = -t.adjacency;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.laplacian(i, i) = t.adjacency.row(i).sum();
  }
  out.H = out.laplacian.bottomRightCorner(n - 1, n - 1);
  out.psi_diag = t.adjacency.col(0).tail(n - 1);
  return out;
}

bool has_leader_rooted_spanning_tree(const Topology& t) {
  const int n = t.n_nodes();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int j = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      // edge j -> i exists when i receives from j
      if (!seen[static_cast<size_t>(i)] && t.adjacency(i, j) > 0.0) {
        seen[static_cast<size_t>(i)] = true;
        queue.push_back(i);
      }
    }
  }
  for (int i = 1; i < n; ++i) {
    if (!seen[static_cast<size_t>(i)]) return false;
  }
  return true;
}

}  // namespace auvfl::graph
