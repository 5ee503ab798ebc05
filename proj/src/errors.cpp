#include "auvfl/errors.hpp"

namespace auvfl {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonSquareAdjacency: return "NonSquareAdjacency";
    case Errc::NegativeEdgeWeight: return "NegativeEdgeWeight";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::UnknownUncertaintyId: return "UnknownUncertaintyId";
    case Errc::BadBounds: return "BadBounds";
    case Errc::BadCount: return "BadCount";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::MissingNeighbor: return "MissingNeighbor";
    case Errc::MissingNeighborDerivative: return "MissingNeighborDerivative";
    case Errc::NonFiniteState: return "NonFiniteState";
    case Errc::IoError: return "IoError";
    case Errc::MissingWeightsFile: return "MissingWeightsFile";
    case Errc::FormatVersionMismatch: return "FormatVersionMismatch";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::DegenerateSegment: return "DegenerateSegment";
    case Errc::MissingOracleSeries: return "MissingOracleSeries";
  }
  return "UnknownError";
}

}  // namespace auvfl
