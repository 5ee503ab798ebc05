#pragma once

#include <stdexcept>
#include <string>

namespace auvfl {

// Every failure the library can raise, as a closed set so callers (CLI,
// bindings, tests) can match on the code instead of parsing messages.
enum class Errc {
  // graph
  NonSquareAdjacency,
  NegativeEdgeWeight,
  SelfLoop,
  // dynamics / gains
  NotPositiveDefinite,
  UnknownUncertaintyId,
  // rbf
  BadBounds,
  BadCount,
  DimensionMismatch,
  EmptyWindow,
  // estimator / engine wiring
  MissingNeighbor,
  MissingNeighborDerivative,
  NonFiniteState,
  // persistence
  IoError,
  MissingWeightsFile,
  FormatVersionMismatch,
  ChecksumMismatch,
  // scenario / config
  ParseError,
  ValidationError,
  // analysis
  DegenerateSegment,
  MissingOracleSeries,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace auvfl
