#ifndef GWAVE_ERRORS_HPP
#define GWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gwave {

/// Machine-greppable error codes. The CLI prints them verbatim as
/// `error: <name>: <message>` on a single line.
enum class errc {
  disconnected_graph,
  nonpositive_weight,
  nonpositive_measure,
  duplicate_edge,
  self_loop,
  unknown_vertex,
  empty_interior,
  empty_boundary,
  not_dirichlet_field,
  invalid_exponent,
  nonpositive_horizon,
  zero_steps,
  time_out_of_range,
  no_convergence,
  step_too_large,
  insufficient_samples,
  invalid_grid_list,
  unstable_integration,
  nonpositive_step,
  forcing_not_zero,
  time_range_mismatch,
  unknown_forcing_kind,
  parse_error,
  io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gwave

#endif  // GWAVE_ERRORS_HPP
