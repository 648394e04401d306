#pragma once

#include <array>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nullpoint/determinants.hpp"
#include "nullpoint/kinematics.hpp"

namespace nullpoint {

struct SolverOptions {
  // Search window for the wire phase theta = k a (negative). The default
  // covers the first two full cycles plus a guard band.
  double phase_min = -4.0 * std::numbers::pi - 1.0;
  double phase_max = 0.0;
  double grid_step = 1e-3;        // scan resolution [rad]
  double det_tolerance = 1e-10;   // on the normalized determinant
};

/// Raised when a requested branch does not exist inside the window.
struct NoRootInWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RootSolution {
  double wire_phase;          // theta [rad], < 0
  double pre_barrier_length;  // |a| = |theta| / k [nm]
  double det_residual;        // |normalized determinant| at the root
  double matrix_condition;    // sigma_min / sigma_max of the boundary matrix
  int branch_index;           // 0 = smallest |theta|
};

/// Brackets every sign change of the normalized determinant on the grid and
/// refines each by bisection. Roots come back sorted by |theta| ascending.
/// Tangential (non-crossing) zeros are not guaranteed to be found.
std::vector<RootSolution> scan_roots(const CircuitSpec& spec,
                                     const SolverOptions& options = {});

/// The branch_index-th root in the window, as a pre-barrier length.
RootSolution solve_for_length(const CircuitSpec& spec, int branch_index,
                              const SolverOptions& options = {});

/// Wavefunction coefficients, A normalized to 1. boundary_residuals holds
/// the four dimensionless boundary equations evaluated at the solution; at a
/// genuine root all four are small, and the one not used in the construction
/// certifies the root.
struct CoefficientSet {
  double A = 1.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  std::array<double, 4> boundary_residuals{};
};

CoefficientSet recover_coefficients(const CircuitSpec& spec, double wire_phase);

/// Triangular recovery from raw Airy values; throws std::domain_error when
/// the reduced 2x2 system is singular (degenerate root).
CoefficientSet recover_triangular_coefficients(const AiryQuad& at_entry,
                                               const AiryQuad& at_exit,
                                               double scale_ratio,
                                               double wire_phase);

struct WavefunctionSample {
  double position;  // x [nm]
  double value;     // psi (dimensionless)
  int region;       // 1 = pre-barrier, 2 = barrier
};

struct WavefunctionTrace {
  std::vector<WavefunctionSample> samples;
  double junction_residual;  // |psi_I(0) - psi_II(0)|
  double closure_residual;   // |psi_I(a) - psi_II(far end)|
};

/// Samples psi around the loop: region I from x = a to 0, then region II
/// from 0 to the barrier's far end. With normalize set, divides by the
/// discrete L2 norm over the loop.
WavefunctionTrace trace_wavefunction(const CircuitSpec& spec,
                                     const CoefficientSet& coeffs,
                                     double wire_phase, int n_samples,
                                     bool normalize = false);

}  // namespace nullpoint
