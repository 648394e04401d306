#include "nullpoint/determinants.hpp"

#include <cmath>
#include <stdexcept>

#include "nullpoint/constants.hpp"

namespace nullpoint {

RectangularTerms rectangular_terms(double energy, double height,
                                   double barrier_length) {
  if (!(barrier_length > 0.0))
    throw std::domain_error("rectangular_terms: barrier length must be positive");
  RectangularTerms t{};
  t.wavenumber = wavenumber(energy);
  t.decay_rate = decay_constant(energy, height);
  if (t.decay_rate == 0.0)
    throw std::domain_error("rectangular_terms: beta = 0 (E = V0) is degenerate");
  t.attenuation = t.decay_rate * barrier_length;
  return t;
}

RectangularTerms scaled_rectangular_terms(double energy, double height,
                                          double barrier_length, double scale) {
  if (!(scale >= 1.0))
    throw std::domain_error("scaled_rectangular_terms: scale must be >= 1");
  return rectangular_terms(energy, scale * height, barrier_length / scale);
}

DeterminantValue det_rectangular(const RectangularTerms& t, double wire_phase) {
  const double ratio = t.decay_rate / t.wavenumber;
  const double value =
      (ratio - 1.0 / ratio) * std::sinh(t.attenuation) * std::sin(wire_phase) +
      2.0 * (1.0 - std::cosh(t.attenuation) * std::cos(wire_phase));
  return {value, "raw determinant / (2 k beta)"};
}

TriangularTerms triangular_terms(const TriangularKinematics& kin,
                                 const AiryQuad& at_entry,
                                 const AiryQuad& at_exit) {
  const double r = kin.scale_ratio;
  TriangularTerms t{};
  t.sin_coeff = r * r * (at_entry.aip * at_exit.bip - at_exit.aip * at_entry.bip) +
                (at_entry.ai * at_exit.bi - at_exit.ai * at_entry.bi);
  t.cos_coeff = r * (at_exit.ai * at_entry.bip - at_exit.aip * at_entry.bi +
                     at_entry.ai * at_exit.bip - at_entry.aip * at_exit.bi);
  t.offset = r * (at_exit.aip * at_exit.bi - at_exit.ai * at_exit.bip) +
             r * (at_entry.aip * at_entry.bi - at_entry.ai * at_entry.bip);
  t.scale = std::fabs(t.sin_coeff) + std::fabs(t.cos_coeff) + std::fabs(t.offset);
  return t;
}

TriangularTerms triangular_terms(const TriangularKinematics& kin) {
  return triangular_terms(kin, airy_eval(kin.entry_arg), airy_eval(kin.exit_arg));
}

DeterminantValue det_triangular(const TriangularTerms& t, double wire_phase) {
  const double value = t.sin_coeff * std::sin(wire_phase) +
                       t.cos_coeff * std::cos(wire_phase) + t.offset;
  return {value, "six-term factored form (dimensionless rows)"};
}

DeterminantValue det_shorted_triangular(const AiryQuad& at_entry,
                                        const AiryQuad& at_exit,
                                        double scale_ratio) {
  const double value = scale_ratio * ((at_exit.ai - at_entry.ai) * (at_entry.bip - at_exit.bip) +
                                      (at_exit.bi - at_entry.bi) * (at_exit.aip - at_entry.aip));
  return {value, "factored shorted form, linear in R"};
}

DeterminantValue det_shorted_triangular(double entry_arg, double exit_arg,
                                        double scale_ratio) {
  return det_shorted_triangular(airy_eval(entry_arg), airy_eval(exit_arg),
                                scale_ratio);
}

DeterminantValue delta_consistency(double wire_phase) {
  if (!(wire_phase < 0.0))
    throw std::domain_error("delta_consistency: wire phase must be negative");
  return {std::sin(wire_phase), "endpoint closure reduced to sin(theta)"};
}

ShortedScanResult scan_shorted_triangular(double entry_min, double exit_max,
                                          double spacing,
                                          std::size_t max_reported) {
  if (!(entry_min < 0.0 && exit_max > 0.0 && spacing > 0.0))
    throw std::domain_error("scan_shorted_triangular: bad grid bounds");
  const int rows = (int)std::floor(-entry_min / spacing + 0.5);
  const int cols = (int)std::floor(exit_max / spacing + 0.5);
  std::vector<AiryQuad> at_entry, at_exit;
  at_entry.reserve(rows);
  at_exit.reserve(cols);
  for (int i = 1; i <= rows; ++i) at_entry.push_back(airy_eval(-spacing * i));
  for (int j = 1; j <= cols; ++j) at_exit.push_back(airy_eval(spacing * j));

  std::vector<std::vector<signed char>> sign(rows, std::vector<signed char>(cols));
  ShortedScanResult result{};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double v =
          det_shorted_triangular(at_entry[i], at_exit[j], 1.0).value;
      sign[i][j] = v >= 0.0 ? 1 : -1;
      (v >= 0.0 ? result.positive_count : result.negative_count)++;
    }
  auto record = [&](int i1, int j1, int i2, int j2) {
    ++result.flip_count;
    if (result.flips.size() < max_reported)
      result.flips.push_back({-spacing * (i1 + 1), spacing * (j1 + 1),
                              -spacing * (i2 + 1), spacing * (j2 + 1)});
  };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols && sign[i][j] != sign[i][j + 1]) record(i, j, i, j + 1);
      if (i + 1 < rows && sign[i][j] != sign[i + 1][j]) record(i, j, i + 1, j);
    }
  return result;
}

double limit_phase_condition(double energy, double height, double barrier_length) {
  if (!(energy > 0.0 && height > 0.0 && barrier_length > 0.0))
    throw std::domain_error("limit_phase_condition: E, V0, b must be positive");
  // m V0 b / (hbar^2 k) in working units; (cos t - 1)/sin t = -tan(t/2)
  // sweeps (0, inf) for t in (-pi, 0), so the principal root is closed-form.
  const double lhs = height * barrier_length /
                     (2.0 * constants::hbar2_over_2m * wavenumber(energy));
  return -2.0 * std::atan(lhs);
}

namespace {

Matrix4 rectangular_matrix(const RectangularTerms& t, double wire_phase) {
  const double k = t.wavenumber;
  const double b = t.decay_rate;
  const double ep = std::exp(t.attenuation);
  const double em = std::exp(-t.attenuation);
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  return Matrix4{{{1.0, 0.0, -1.0, -1.0},
                  {0.0, k, -b, b},
                  {c, s, -ep, -em},
                  {k * s, -k * c, b * ep, -b * em}}};
}

Matrix4 triangular_matrix(const TriangularKinematics& kin, double wire_phase) {
  const AiryQuad e = airy_eval(kin.entry_arg);
  const AiryQuad x = airy_eval(kin.exit_arg);
  const double r = kin.scale_ratio;
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  return Matrix4{{{1.0, 0.0, -e.ai, -e.bi},
                  {0.0, 1.0, -r * e.aip, -r * e.bip},
                  {c, s, -x.ai, -x.bi},
                  {s, -c, r * x.aip, r * x.bip}}};
}

Matrix4 delta_matrix(double wire_phase) {
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  // Rows: psi and (claimed) coefficient matching at the origin, then psi and
  // psi' continuity where the two outer ends meet.
  return Matrix4{{{1.0, 0.0, -1.0, 0.0},
                  {0.0, 1.0, 0.0, -1.0},
                  {c, -s, -c, -s},
                  {s, c, s, -c}}};
}

}  // namespace

Matrix4 boundary_matrix(const CircuitSpec& spec, double wire_phase) {
  validate(spec);
  return std::visit(
      [&](const auto& barrier) -> Matrix4 {
        using T = std::decay_t<decltype(barrier)>;
        if constexpr (std::is_same_v<T, RectangularBarrier>) {
          return rectangular_matrix(
              rectangular_terms(spec.energy, barrier.height, barrier.length),
              wire_phase);
        } else if constexpr (std::is_same_v<T, ScaledRectangularBarrier>) {
          return rectangular_matrix(
              scaled_rectangular_terms(spec.energy, barrier.height,
                                       barrier.length, barrier.scale),
              wire_phase);
        } else if constexpr (std::is_same_v<T, TriangularBarrier>) {
          return triangular_matrix(
              triangular_kinematics(spec.energy, barrier.height, barrier.length),
              wire_phase);
        } else {
          return delta_matrix(wire_phase);
        }
      },
      spec.barrier);
}

double numeric_det(const CircuitSpec& spec, double wire_phase) {
  return determinant4(boundary_matrix(spec, wire_phase));
}

DeterminantEvaluator::DeterminantEvaluator(const CircuitSpec& spec) {
  validate(spec);
  std::visit(
      [&](const auto& barrier) {
        using T = std::decay_t<decltype(barrier)>;
        if constexpr (std::is_same_v<T, RectangularBarrier>) {
          kind_ = Kind::kRectangular;
          rect_ = rectangular_terms(spec.energy, barrier.height, barrier.length);
        } else if constexpr (std::is_same_v<T, ScaledRectangularBarrier>) {
          kind_ = Kind::kRectangular;
          rect_ = scaled_rectangular_terms(spec.energy, barrier.height,
                                           barrier.length, barrier.scale);
        } else if constexpr (std::is_same_v<T, TriangularBarrier>) {
          kind_ = Kind::kTriangular;
          tri_ = triangular_terms(
              triangular_kinematics(spec.energy, barrier.height, barrier.length));
        } else {
          kind_ = Kind::kDelta;
        }
      },
      spec.barrier);
  switch (kind_) {
    case Kind::kRectangular: {
      const double ratio = rect_.decay_rate / rect_.wavenumber;
      tolerance_scale_ = std::fabs(ratio - 1.0 / ratio) * std::sinh(rect_.attenuation) +
                         2.0 + 2.0 * std::cosh(rect_.attenuation);
      normalization_ = "raw determinant / (2 k beta)";
      break;
    }
    case Kind::kTriangular:
      tolerance_scale_ = tri_.scale;
      normalization_ = "six-term factored form (dimensionless rows)";
      break;
    case Kind::kDelta:
      tolerance_scale_ = 1.0;
      normalization_ = "endpoint closure reduced to sin(theta)";
      break;
  }
}

double DeterminantEvaluator::operator()(double wire_phase) const {
  switch (kind_) {
    case Kind::kRectangular:
      return det_rectangular(rect_, wire_phase).value;
    case Kind::kTriangular:
      return det_triangular(tri_, wire_phase).value;
    case Kind::kDelta:
    default:
      return std::sin(wire_phase);
  }
}

}  // namespace nullpoint
