#include "loopyspectra/errors.hpp"

namespace loopyspectra {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::io_error: return "io_error";
    case Errc::parse_error: return "parse_error";
    case Errc::out_of_range_node: return "out_of_range_node";
    case Errc::malformed_motif: return "malformed_motif";
    case Errc::disconnected_motif: return "disconnected_motif";
    case Errc::not_multiple_of_six: return "not_multiple_of_six";
    case Errc::odd_degree_sum: return "odd_degree_sum";
    case Errc::generation_failed: return "generation_failed";
    case Errc::too_large: return "too_large";
    case Errc::too_deep: return "too_deep";
    case Errc::near_singular: return "near_singular";
    case Errc::divergent_series: return "divergent_series";
    case Errc::singular_motif_solve: return "singular_motif_solve";
    case Errc::not_converged: return "not_converged";
    case Errc::grid_too_narrow: return "grid_too_narrow";
    case Errc::disjoint_grids: return "disjoint_grids";
    case Errc::malformed_csv: return "malformed_csv";
    case Errc::extrapolation_failed: return "extrapolation_failed";
    case Errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

}  // namespace loopyspectra
