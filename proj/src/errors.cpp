#include "gwave/errors.hpp"

namespace gwave {

const char* errc_name(errc code) {
  switch (code) {
    case errc::disconnected_graph: return "DisconnectedGraph";
    case errc::nonpositive_weight: return "NonpositiveWeight";
    case errc::nonpositive_measure: return "NonpositiveMeasure";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::self_loop: return "SelfLoop";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::empty_interior: return "EmptyInterior";
    case errc::empty_boundary: return "EmptyBoundary";
    case errc::not_dirichlet_field: return "NotDirichletField";
    case errc::invalid_exponent: return "InvalidExponent";
    case errc::nonpositive_horizon: return "NonpositiveHorizon";
    case errc::zero_steps: return "ZeroSteps";
    case errc::time_out_of_range: return "TimeOutOfRange";
    case errc::no_convergence: return "NoConvergence";
    case errc::step_too_large: return "StepTooLarge";
    case errc::insufficient_samples: return "InsufficientSamples";
    case errc::invalid_grid_list: return "InvalidGridList";
    case errc::unstable_integration: return "UnstableIntegration";
    case errc::nonpositive_step: return "NonpositiveStep";
    case errc::forcing_not_zero: return "ForcingNotZero";
    case errc::time_range_mismatch: return "TimeRangeMismatch";
    case errc::unknown_forcing_kind: return "UnknownForcingKind";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace gwave
