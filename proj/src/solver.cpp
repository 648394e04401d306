#include "nullpoint/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nullpoint/linalg.hpp"

namespace nullpoint {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Residual the refiner can actually reach. The normalized rectangular
// determinant is O(cosh(phi)) at its extrema, so demanding an absolute
// 1e-10 below the roundoff of such terms would reject genuine roots; the
// triangular form gets the same allowance through its term scale.
double accept_tolerance(const DeterminantEvaluator& det, double requested) {
  return std::max(requested, 256.0 * kEps * det.tolerance_scale());
}

struct Refined {
  double phase;
  double residual;
};

Refined bisect(const DeterminantEvaluator& det, double lo, double hi,
               double flo, double fhi) {
  Refined best = std::fabs(flo) <= std::fabs(fhi) ? Refined{lo, std::fabs(flo)}
                                                  : Refined{hi, std::fabs(fhi)};
  for (int i = 0; i < 200; ++i) {
    const double width = hi - lo;
    if (width < 4.0 * kEps * std::max(std::fabs(lo), std::fabs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = det(mid);
    if (std::fabs(fm) < best.residual) best = {mid, std::fabs(fm)};
    if (fm == 0.0) return {mid, 0.0};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return best;
}

}  // namespace

std::vector<RootSolution> scan_roots(const CircuitSpec& spec,
                                     const SolverOptions& options) {
  validate(spec);
  if (!(options.grid_step > 0.0))
    throw std::domain_error("scan_roots: grid step must be positive");
  if (!(options.phase_min < options.phase_max))
    throw std::domain_error("scan_roots: empty window");
  if (options.phase_max > 0.0)
    throw std::domain_error("scan_roots: window must lie in (-inf, 0)");
  // Theta = 0 is the degenerate zero-length pre-barrier; the window is open
  // on the right.
  const double hi_end = std::min(options.phase_max, -1e-9);
  if (options.phase_min >= hi_end) return {};

  const DeterminantEvaluator det(spec);
  const double tol = accept_tolerance(det, options.det_tolerance);
  const double k = wavenumber(spec.energy);

  std::vector<Refined> found;
  const long cells =
      (long)std::ceil((hi_end - options.phase_min) / options.grid_step);
  double x0 = options.phase_min;
  double f0 = det(x0);
  for (long i = 1; i <= cells; ++i) {
    const double x1 = std::min(options.phase_min + i * options.grid_step, hi_end);
    const double f1 = det(x1);
    if (f0 == 0.0) {
      found.push_back({x0, 0.0});
    } else if (f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      found.push_back(bisect(det, x0, x1, f0, f1));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) found.push_back({x0, 0.0});

  // Nearest zero first.
  std::sort(found.begin(), found.end(),
            [](const Refined& a, const Refined& b) { return a.phase > b.phase; });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const Refined& a, const Refined& b) {
                            return std::fabs(a.phase - b.phase) < 1e-9;
                          }),
              found.end());

  std::vector<RootSolution> roots;
  roots.reserve(found.size());
  for (const Refined& r : found) {
    if (r.residual > tol)
      throw std::runtime_error(
          "scan_roots: bracketed sign change failed to refine to tolerance");
    RootSolution sol{};
    sol.wire_phase = r.phase;
    sol.pre_barrier_length = -r.phase / k;
    sol.det_residual = r.residual;
    sol.matrix_condition = condition_ratio(boundary_matrix(spec, r.phase));
    sol.branch_index = (int)roots.size();
    roots.push_back(sol);
  }
  return roots;
}

RootSolution solve_for_length(const CircuitSpec& spec, int branch_index,
                              const SolverOptions& options) {
  if (branch_index < 0)
    throw std::domain_error("solve_for_length: branch index must be >= 0");
  const auto roots = scan_roots(spec, options);
  if ((std::size_t)branch_index >= roots.size())
    throw NoRootInWindow("solve_for_length: branch " +
                         std::to_string(branch_index) +
                         " not found in the search window");
  return roots[branch_index];
}

namespace {

CoefficientSet recover_rectangular(const RectangularTerms& t, double wire_phase) {
  const double ratio = t.decay_rate / t.wavenumber;
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  const double ch = std::cosh(t.attenuation);
  const double sh = std::sinh(t.attenuation);
  const double ep = std::exp(t.attenuation);
  const double em = std::exp(-t.attenuation);
  // A = 1; psi continuity at the origin gives C + D = 1, the derivative row
  // gives B = ratio (C - D). The derivative closure row then fixes
  // v = C - D; cosh(phi) > cos(theta) keeps the division safe everywhere.
  const double v = -(s + ratio * sh) / (ratio * (ch - c));
  CoefficientSet out;
  out.B = ratio * v;
  out.C = 0.5 * (1.0 + v);
  out.D = 0.5 * (1.0 - v);
  out.boundary_residuals = {
      out.A - out.C - out.D,
      out.B - ratio * out.C + ratio * out.D,
      // psi closure row: not used in the construction, certifies the root.
      c * out.A + s * out.B - out.C * ep - out.D * em,
      s * out.A - c * out.B + ratio * (out.C * ep - out.D * em)};
  return out;
}

CoefficientSet recover_delta(double wire_phase) {
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  // The endpoint matching forces B = D and leaves D free; 0 is the canonical
  // choice, making both half-wavefunctions pure cosines.
  CoefficientSet out;
  out.B = 0.0;
  out.C = 1.0;
  out.D = 0.0;
  out.boundary_residuals = {out.A - out.C, out.B - out.D,
                            c * out.A - s * out.B - c * out.C - s * out.D,
                            s * out.A + c * out.B + s * out.C - c * out.D};
  return out;
}

}  // namespace

CoefficientSet recover_triangular_coefficients(const AiryQuad& at_entry,
                                               const AiryQuad& at_exit,
                                               double scale_ratio,
                                               double wire_phase) {
  const double c = std::cos(wire_phase);
  const double s = std::sin(wire_phase);
  const double r = scale_ratio;
  // Rows used: psi at the origin, the derivative row (eliminating B), and
  // psi at the closure. The derivative closure row certifies the root.
  const auto cd = solve2x2({{{at_entry.ai, at_entry.bi},
                             {at_exit.ai - r * s * at_entry.aip,
                              at_exit.bi - r * s * at_entry.bip}}},
                           {1.0, c});
  CoefficientSet out;
  out.C = cd[0];
  out.D = cd[1];
  out.B = r * (at_entry.aip * out.C + at_entry.bip * out.D);
  out.boundary_residuals = {
      out.A - at_entry.ai * out.C - at_entry.bi * out.D,
      out.B - r * (at_entry.aip * out.C + at_entry.bip * out.D),
      c * out.A + s * out.B - at_exit.ai * out.C - at_exit.bi * out.D,
      s * out.A - c * out.B + r * (at_exit.aip * out.C + at_exit.bip * out.D)};
  return out;
}

CoefficientSet recover_coefficients(const CircuitSpec& spec, double wire_phase) {
  validate(spec);
  return std::visit(
      [&](const auto& barrier) -> CoefficientSet {
        using T = std::decay_t<decltype(barrier)>;
        if constexpr (std::is_same_v<T, RectangularBarrier>) {
          return recover_rectangular(
              rectangular_terms(spec.energy, barrier.height, barrier.length),
              wire_phase);
        } else if constexpr (std::is_same_v<T, ScaledRectangularBarrier>) {
          return recover_rectangular(
              scaled_rectangular_terms(spec.energy, barrier.height,
                                       barrier.length, barrier.scale),
              wire_phase);
        } else if constexpr (std::is_same_v<T, TriangularBarrier>) {
          const auto kin =
              triangular_kinematics(spec.energy, barrier.height, barrier.length);
          return recover_triangular_coefficients(airy_eval(kin.entry_arg),
                                                 airy_eval(kin.exit_arg),
                                                 kin.scale_ratio, wire_phase);
        } else {
          return recover_delta(wire_phase);
        }
      },
      spec.barrier);
}

WavefunctionTrace trace_wavefunction(const CircuitSpec& spec,
                                     const CoefficientSet& coeffs,
                                     double wire_phase, int n_samples,
                                     bool normalize) {
  validate(spec);
  if (n_samples < 2)
    throw std::domain_error("trace_wavefunction: need at least 2 samples");
  if (!(wire_phase < 0.0))
    throw std::domain_error("trace_wavefunction: wire phase must be negative");

  const double k = wavenumber(spec.energy);
  const double a = wire_phase / k;  // negative coordinate of the far wire end

  const double region2_length = std::visit(
      [&](const auto& barrier) -> double {
        using T = std::decay_t<decltype(barrier)>;
        if constexpr (std::is_same_v<T, RectangularBarrier>)
          return barrier.length;
        else if constexpr (std::is_same_v<T, ScaledRectangularBarrier>)
          return barrier.length / barrier.scale;
        else if constexpr (std::is_same_v<T, TriangularBarrier>)
          return barrier.length;
        else
          return -a;  // delta model: region II mirrors the pre-barrier
      },
      spec.barrier);

  const auto psi_region2 = [&](double x) -> double {
    return std::visit(
        [&](const auto& barrier) -> double {
          using T = std::decay_t<decltype(barrier)>;
          if constexpr (std::is_same_v<T, RectangularBarrier>) {
            const double beta = decay_constant(spec.energy, barrier.height);
            return coeffs.C * std::exp(beta * x) + coeffs.D * std::exp(-beta * x);
          } else if constexpr (std::is_same_v<T, ScaledRectangularBarrier>) {
            const double beta =
                decay_constant(spec.energy, barrier.scale * barrier.height);
            return coeffs.C * std::exp(beta * x) + coeffs.D * std::exp(-beta * x);
          } else if constexpr (std::is_same_v<T, TriangularBarrier>) {
            const auto kin = triangular_kinematics(spec.energy, barrier.height,
                                                   barrier.length);
            const AiryQuad q = airy_eval(triangular_airy_arg(kin, x));
            return coeffs.C * q.ai + coeffs.D * q.bi;
          } else {
            return coeffs.C * std::cos(k * x) + coeffs.D * std::sin(k * x);
          }
        },
        spec.barrier);
  };
  const auto psi_region1 = [&](double x) {
    return coeffs.A * std::cos(k * x) + coeffs.B * std::sin(k * x);
  };

  const double wire_length = -a;
  const double total = wire_length + region2_length;

  WavefunctionTrace trace;
  trace.samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double s = total * i / (n_samples - 1);
    if (s < wire_length) {
      const double x = a + s;
      trace.samples.push_back({x, psi_region1(x), 1});
    } else {
      const double x = s - wire_length;
      trace.samples.push_back({x, psi_region2(x), 2});
    }
  }
  trace.junction_residual = std::fabs(psi_region1(0.0) - psi_region2(0.0));
  trace.closure_residual = std::fabs(psi_region1(a) - psi_region2(region2_length));

  if (normalize) {
    const double ds = total / (n_samples - 1);
    double sum = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      const double w = (i == 0 || i == n_samples - 1) ? 0.5 : 1.0;
      sum += w * trace.samples[i].value * trace.samples[i].value * ds;
    }
    const double norm = std::sqrt(sum);
    if (norm > 0.0) {
      for (auto& sample : trace.samples) sample.value /= norm;
      trace.junction_residual /= norm;
      trace.closure_residual /= norm;
    }
  }
  return trace;
}

}  // namespace nullpoint
