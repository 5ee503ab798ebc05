#pragma once

#include <Eigen/Dense>

#include "auvfl/errors.hpp"

namespace auvfl::graph {

// Directed communication topology over the leader (node 0) and N followers
// (nodes 1..N).  adjacency(i, j) = a_ij > 0 means node i receives information
// from node j; the leader receives from nobody, so row 0 is all zero.
struct Topology {
  Eigen::MatrixXd adjacency;  // (N+1) x (N+1), zero diagonal, weights >= 0

  int n_nodes() const { return static_cast<int>(adjacency.rows()); }
  int n_followers() const { return n_nodes() - 1; }
};

// Laplacian of the full graph plus the two follower-side blocks the
// consensus analysis works with: H is the lower-right N x N block of L and
// psi_diag holds the leader pinning weights a_i0 (the diagonal of Psi).
struct LaplacianPair {
  Eigen::MatrixXd laplacian;  // (N+1) x (N+1)
  Eigen::MatrixXd H;          // N x N follower block
  Eigen::VectorXd psi_diag;   // N, entry i-1 is a_i0
};

// Validates a raw weight matrix and wraps it.  Throws NonSquareAdjacency,
// NegativeEdgeWeight, or SelfLoop.  Row 0 (leader inputs) is forced to zero.
Topology build_topology(const Eigen::MatrixXd& weights);

// L = D - A with in-degree on the diagonal: l_ii = sum_j a_ij, l_ij = -a_ij.
LaplacianPair laplacian(const Topology& t);

// True when every follower is reachable from the leader along directed
// edges j -> i (i.e. following the direction information flows).
bool has_leader_rooted_spanning_tree(const Topology& t);

}  // namespace auvfl::graph
