#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "auvfl/errors.hpp"

namespace auvfl::rbf {

// Gaussian RBF network with centers on a regular lattice and one weight
// column per output channel.  The kernel is exp(-|Z - mu|^2 / width^2)
// (width squared in the denominator, no factor 2).
//
// Lattice ordering: axis 0 varies slowest, the last axis fastest, i.e.
// node index j = ((i0 * c1) + i1) * c2 + i2 for a 3-D grid.
struct RbfNetwork {
  std::vector<std::array<double, 2>> bounds;  // per-axis [lo, hi]
  std::vector<int> counts;                    // per-axis node counts
  std::vector<Eigen::VectorXd> axes;          // per-axis center coordinates
  Eigen::MatrixXd centers;                    // n_nodes x q
  double width = 1.0;
  Eigen::MatrixXd weights;                    // n_nodes x n_channels

  int input_dim() const { return static_cast<int>(counts.size()); }
  int n_nodes() const { return static_cast<int>(centers.rows()); }
  int n_channels() const { return static_cast<int>(weights.cols()); }
};

// Centers at the Cartesian product of per-axis linspaces INCLUDING both
// endpoints; weights start at zero.  Requires lo < hi and count >= 2 per
// axis (throws BadBounds / BadCount) and width > 0 (BadBounds).
RbfNetwork build_grid_network(const std::vector<std::array<double, 2>>& bounds,
                              const std::vector<int>& counts, double width,
                              int n_channels = 3);

// S_j(Z) = exp(-|Z - mu_j|^2 / width^2).  Uses the separable per-axis
// product on lattice grids; regressor_direct is the plain per-center loop
// kept as a cross-check oracle.
Eigen::VectorXd regressor(const RbfNetwork& net, const Eigen::VectorXd& Z);
Eigen::VectorXd regressor_direct(const RbfNetwork& net,
                                 const Eigen::VectorXd& Z);

// Separable fast path on raw views; shared by regressor() and the simulation
// engine so both evaluate the identical expression.
void regressor_lattice(const std::vector<Eigen::VectorXd>& axes, double width,
                       const Eigen::VectorXd& Z, Eigen::VectorXd& out);

// Channel k output = weights.col(k) . S(Z).
Eigen::Vector3d nn_output(const RbfNetwork& net, const Eigen::VectorXd& Z);

// Time-indexed weight snapshots of one network (each entry n_nodes x 3).
struct WeightSeries {
  std::vector<double> t;
  std::vector<Eigen::MatrixXd> w;
};

// Element-wise arithmetic mean of the snapshots with t in [t_a, t_b]
// (all channels at once).  Throws EmptyWindow unless the window holds at
// least two snapshots.
Eigen::MatrixXd average_weights(const WeightSeries& series, double t_a,
                                double t_b);

// Versioned little-endian binary container (magic "RBFW"), CRC-32 protected;
// the round trip is bit-exact.  Throws IoError, FormatVersionMismatch,
// ChecksumMismatch.
void save_weights(const RbfNetwork& net, const std::string& path);
RbfNetwork load_weights(const std::string& path);

// CRC-32 (IEEE 802.3, reflected) used by the weights container and exposed
// for tests.
uint32_t crc32(const void* data, size_t len, uint32_t seed = 0);

}  // namespace auvfl::rbf
