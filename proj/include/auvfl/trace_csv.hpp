#pragma once

#include <string>

#include "auvfl/sim.hpp"

namespace auvfl::sim {

// Trace CSV layout: 7 + 31 N columns, comma-separated, LF line endings,
// numbers printed with 17 significant digits so a readback is bit-exact.
//
//   t, x0, y0, psi0, u0, v0, r0,                       (time + leader chi0)
//   then per agent i = 1..N (31 columns each):
//   a{i}_x a{i}_y a{i}_psi a{i}_u a{i}_v a{i}_r        eta, nu
//   a{i}_chihat0 .. a{i}_chihat5                       leader-state estimate
//   a{i}_Aerr                                          ||A_hat - A0||_F
//   a{i}_z1x a{i}_z1y a{i}_z1psi                       position error
//   a{i}_z2u a{i}_z2v a{i}_z2r                         velocity error
//   a{i}_tau1 a{i}_tau2 a{i}_tau3                      control
//   a{i}_F1 a{i}_F2 a{i}_F3                            true nonlinearity
//   a{i}_nn1 a{i}_nn2 a{i}_nn3                         network output
//   a{i}_wn1 a{i}_wn2 a{i}_wn3                         weight norms
//
// Weight snapshots, the grid spec and the adaptation counter do not fit a
// rectangular table and are not stored here; read_trace_csv leaves
// trace.weights empty, trace.nn default and adaptation_evals = -1.
inline constexpr int kTraceColumnsPerAgent = 31;
inline constexpr int kTraceFixedColumns = 7;

void write_trace_csv(const SimTrace& trace, const std::string& path);

// Throws IoError (unreadable), ParseError (malformed header or row),
// DimensionMismatch (column count not 7 + 31 N).
SimTrace read_trace_csv(const std::string& path);

}  // namespace auvfl::sim
