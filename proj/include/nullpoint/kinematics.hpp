#pragma once

#include <optional>
#include <variant>

namespace nullpoint {

// The four barrier shapes. Energies in eV, lengths in nm throughout.
struct RectangularBarrier {
  double height;  // V0 [eV]
  double length;  // b [nm]
};

struct TriangularBarrier {
  double height;  // V0 [eV], potential at the left edge
  double length;  // c [nm], where the ramp reaches zero
};

struct DeltaBarrier {
  double strength;  // alpha [eV nm]; does not enter the null-point condition
};

struct ScaledRectangularBarrier {
  double height;  // V0 [eV], unscaled
  double length;  // b [nm], unscaled
  double scale;   // xi >= 1: actual barrier is (xi V0) high and (b / xi) long
};

using BarrierModel = std::variant<RectangularBarrier, TriangularBarrier,
                                  DeltaBarrier, ScaledRectangularBarrier>;

struct CircuitSpec {
  BarrierModel barrier;
  double energy = 0.0;  // E [eV]
  // |a| [nm]; the pre-barrier coordinate itself is negative by convention,
  // the magnitude is stored.
  std::optional<double> pre_barrier_length;
};

/// k = sqrt(E / (hbar^2/2m)) [1/nm]. Throws for E < 0.
double wavenumber(double energy);

/// beta = sqrt((V0 - E) / (hbar^2/2m)) [1/nm], the sub-barrier decay rate.
/// Throws unless E < V0.
double decay_constant(double energy, double height);

/// Everything the triangular-barrier determinant needs, derived once.
struct TriangularKinematics {
  double wavenumber;        // k [1/nm]
  double airy_scale;        // gamma = (V0 / ((hbar^2/2m) c))^(1/3) [1/nm]
  double entry_arg;         // Airy argument at x = 0, K = -(1 - E/V0) gamma c <= 0
  double exit_arg;          // Airy argument at x = c, X = gamma c E/V0 >= 0
  double scale_ratio;       // R = gamma / k
  double barrier_length;    // c [nm]
  double tunneling_extent;  // (1 - E/V0) c [nm], the classically forbidden span
};

/// Throws unless 0 < E < V0 and c > 0.
TriangularKinematics triangular_kinematics(double energy, double height, double length);

/// Airy argument xi(x) = K + gamma x inside the triangular barrier.
double triangular_airy_arg(const TriangularKinematics& kin, double position);

/// Validates a full circuit description; throws std::domain_error with a
/// one-line reason on the first violated constraint.
void validate(const CircuitSpec& spec);

}  // namespace nullpoint
