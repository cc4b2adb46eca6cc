#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace corad {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

inline constexpr double kPi = 3.14159265358979323846;
inline const Cx kTwoPiI{0.0, 2.0 * kPi};

/// Reason codes for rejected inputs and failed numeric procedures.
enum class Errc {
  dimension_mismatch,
  invalid_input,
  unsupported_basis,
  unsupported_geometry,
  empty_cycle,
  point_in_compact,      // eta_map asked for a point of G
  singular_point,        // cycle through a singular point of the variety
  pole_on_cycle,
  fiber_degenerate,      // branch point on (or too close to) the base cycle
  kernel_pole,
  path_leaves_dual,
  not_homogeneous,
  limit_not_stabilized,
  quadrature_not_converged,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Per-evaluation-point outcome, mirrored in report rows.
enum class RowStatus { ok, skipped_near_incidence, not_stabilized };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::skipped_near_incidence: return "skipped_near_incidence";
    case RowStatus::not_stabilized: return "not_stabilized";
  }
  return "unknown";
}

inline double norm2(const CxVec& v) {
  double s = 0.0;
  for (const Cx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace corad
