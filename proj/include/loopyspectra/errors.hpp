#pragma once

#include <stdexcept>
#include <string>

namespace loopyspectra {

// Error conditions surfaced by the library.  The C API maps these 1:1 onto
// ls_status codes, so keep the two lists in sync.
enum class Errc {
  io_error,
  parse_error,
  out_of_range_node,
  malformed_motif,
  disconnected_motif,
  not_multiple_of_six,
  odd_degree_sum,
  generation_failed,
  too_large,
  too_deep,
  near_singular,
  divergent_series,
  singular_motif_solve,
  not_converged,
  grid_too_narrow,
  disjoint_grids,
  malformed_csv,
  extrapolation_failed,
  invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace loopyspectra
