#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "nullpoint/airy.hpp"
#include "nullpoint/kinematics.hpp"
#include "nullpoint/linalg.hpp"

namespace nullpoint {

/// A normalized boundary-condition determinant sample.
struct DeterminantValue {
  double value;
  std::string_view normalization;  // what the raw 4x4 determinant was divided by
};

/// Precomputed pieces of the rectangular determinant.
struct RectangularTerms {
  double wavenumber;   // k [1/nm]
  double decay_rate;   // beta [1/nm]
  double attenuation;  // phi = beta * b, dimensionless
};

RectangularTerms rectangular_terms(double energy, double height, double barrier_length);

/// Same shape with the barrier replaced by one xi times higher and xi times
/// shorter; reduces to rectangular_terms at xi = 1.
RectangularTerms scaled_rectangular_terms(double energy, double height,
                                          double barrier_length, double scale);

/// (beta/k - k/beta) sinh(phi) sin(theta) + 2 [1 - cosh(phi) cos(theta)],
/// i.e. the raw determinant divided by 2 k beta.
DeterminantValue det_rectangular(const RectangularTerms& terms, double wire_phase);

/// The triangular determinant collapses to sin_coeff sin(theta) +
/// cos_coeff cos(theta) + offset once the Airy values at the two barrier
/// edges are fixed; offset is -2R/pi by the Wronskian.
struct TriangularTerms {
  double sin_coeff;
  double cos_coeff;
  double offset;
  double scale;  // |sin_coeff| + |cos_coeff| + |offset|, for tolerances
};

TriangularTerms triangular_terms(const TriangularKinematics& kin,
                                 const AiryQuad& at_entry, const AiryQuad& at_exit);
TriangularTerms triangular_terms(const TriangularKinematics& kin);

DeterminantValue det_triangular(const TriangularTerms& terms, double wire_phase);

/// The shorted special case (no pre-barrier, theta = 0):
/// R { [Ai(X)-Ai(K)][Bi'(K)-Bi'(X)] + [Bi(X)-Bi(K)][Ai'(X)-Ai'(K)] }.
DeterminantValue det_shorted_triangular(double entry_arg, double exit_arg,
                                        double scale_ratio);
DeterminantValue det_shorted_triangular(const AiryQuad& at_entry,
                                        const AiryQuad& at_exit,
                                        double scale_ratio);

/// Delta-function barrier: the closure conditions reduce to sin(theta) = 0,
/// independent of the barrier strength. Requires theta < 0.
DeterminantValue delta_consistency(double wire_phase);

/// Exhaustive sign scan of the shorted determinant over a (K, X) grid.
/// Tests the only-trivial-solution claim: if it held, no pair of adjacent
/// grid points would differ in sign. Flips are reported, never hidden.
struct ShortedGridFlip {
  double entry_a, exit_a;  // (K, X) of one grid point
  double entry_b, exit_b;  // its neighbor with the opposite sign
};
struct ShortedScanResult {
  std::size_t positive_count;
  std::size_t negative_count;
  std::size_t flip_count;                 // adjacent pairs of opposite sign
  std::vector<ShortedGridFlip> flips;     // first few, scan order
};
ShortedScanResult scan_shorted_triangular(double entry_min = -8.0,
                                          double exit_max = 8.0,
                                          double spacing = 0.05,
                                          std::size_t max_reported = 16);

/// Solves m V0 b / (hbar^2 k) = (cos(theta) - 1)/sin(theta) on (-pi, 0);
/// the root family repeats at shifts of -2 pi n. This is the large-xi limit
/// of the scaled-rectangular null-point condition.
double limit_phase_condition(double energy, double height, double barrier_length);

/// Literal 4x4 boundary-condition matrix in the unknowns (A, B, C, D).
Matrix4 boundary_matrix(const CircuitSpec& spec, double wire_phase);

/// Raw 4x4 determinant of boundary_matrix, by pivoted elimination. The
/// independent algebra check for the closed forms above.
double numeric_det(const CircuitSpec& spec, double wire_phase);

/// Normalized determinant for any model, plus the tolerance scale a root
/// finder should use (1 for well-scaled models, the term-magnitude sum where
/// cosh(phi) or the Airy terms grow).
class DeterminantEvaluator {
 public:
  explicit DeterminantEvaluator(const CircuitSpec& spec);

  double operator()(double wire_phase) const;
  double tolerance_scale() const { return tolerance_scale_; }
  std::string_view normalization() const { return normalization_; }

 private:
  enum class Kind { kRectangular, kTriangular, kDelta };
  Kind kind_;
  RectangularTerms rect_{};
  TriangularTerms tri_{};
  double tolerance_scale_ = 1.0;
  std::string_view normalization_;
};

}  // namespace nullpoint
