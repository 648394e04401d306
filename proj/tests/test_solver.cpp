#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nullpoint/determinants.hpp"
#include "nullpoint/solver.hpp"

using namespace nullpoint;

namespace {

constexpr double kPi = std::numbers::pi;

SolverOptions window(double lo, double hi, double step = 1e-3) {
  SolverOptions options;
  options.phase_min = lo;
  options.phase_max = hi;
  options.grid_step = step;
  return options;
}

}  // namespace

TEST_CASE("rectangular roots at the symmetric energy") {
  const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
  const auto t = rectangular_terms(0.5, 1.0, 0.1);
  const double first = -std::acos(1.0 / std::cosh(t.attenuation));
  const auto roots = scan_roots(spec, window(-2.0 * kPi, 0.0));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].wire_phase == doctest::Approx(first).epsilon(1e-10));
  CHECK(roots[1].wire_phase ==
        doctest::Approx(-(2.0 * kPi - std::fabs(first))).epsilon(1e-10));
  CHECK(roots[0].branch_index == 0);
  CHECK(roots[1].branch_index == 1);
  CHECK(roots[0].pre_barrier_length ==
        doctest::Approx(std::fabs(first) / t.wavenumber).epsilon(1e-12));
  CHECK(roots[0].pre_barrier_length == doctest::Approx(0.0979).epsilon(2e-3));
  for (const auto& root : roots) {
    CHECK(root.det_residual <= 1e-10);
    CHECK(root.matrix_condition <= 1e-7);
  }
}

TEST_CASE("rectangular model has two roots per cycle") {
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double height = 0.2 + 1.8 * u01(rng);
    const double energy = height * (0.05 + 0.9 * u01(rng));
    const double length = 0.03 + 0.77 * u01(rng);
    const CircuitSpec spec{RectangularBarrier{height, length}, energy, {}};
    const auto roots = scan_roots(spec, window(-2.0 * kPi, 0.0));
    CAPTURE(energy);
    CAPTURE(height);
    CAPTURE(length);
    REQUIRE(roots.size() == 2);
  }
}

TEST_CASE("delta roots sit exactly at multiples of pi") {
  const CircuitSpec spec{DeltaBarrier{1.0}, 1.0, {}};
  const auto roots = scan_roots(spec, window(-4.0 * kPi, 0.0));
  REQUIRE(roots.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    CHECK(std::fabs(roots[n - 1].wire_phase + n * kPi) <= 1e-12);
    CHECK(roots[n - 1].matrix_condition <= 1e-7);
  }
  // |a| = pi / k at one eV
  CHECK(roots[0].pre_barrier_length == doctest::Approx(0.6132).epsilon(2e-4));
  // Independent of the barrier strength.
  const CircuitSpec strong{DeltaBarrier{50.0}, 1.0, {}};
  const auto same = scan_roots(strong, window(-4.0 * kPi, 0.0));
  REQUIRE(same.size() == 3);
  CHECK(same[0].wire_phase == roots[0].wire_phase);
}

TEST_CASE("triangular root against a dense-scan oracle") {
  const CircuitSpec spec{TriangularBarrier{1.0, 1.0}, 0.5, {}};
  // Oracle: 1e-5 grid plus bisection, independent of scan_roots' machinery.
  const auto terms = triangular_terms(triangular_kinematics(0.5, 1.0, 1.0));
  double oracle = 0.0;
  int crossings = 0;
  double prev_theta = -7.0, prev_v = det_triangular(terms, prev_theta).value;
  for (double theta = -7.0 + 1e-5; theta < -5.0; theta += 1e-5) {
    const double v = det_triangular(terms, theta).value;
    if ((v < 0.0) != (prev_v < 0.0)) {
      double lo = prev_theta, hi = theta, flo = prev_v;
      for (int i = 0; i < 100 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = det_triangular(terms, mid).value;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      oracle = 0.5 * (lo + hi);
      ++crossings;
    }
    prev_theta = theta;
    prev_v = v;
  }
  REQUIRE(crossings == 1);

  const auto roots = scan_roots(spec, window(-7.0, -5.0));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].wire_phase == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(roots[0].wire_phase == doctest::Approx(-6.085230325596).epsilon(1e-9));
  CHECK(roots[0].det_residual <= 1e-10 * terms.scale);
  CHECK(roots[0].matrix_condition <= 1e-7);
}

TEST_CASE("triangular branch-0 near the barrier top") {
  // Dense-scan-derived value: the first crossing for E = 0.99, c = 1 sits at
  // theta = -1.0957043, i.e. |a| = 0.21495 nm.
  const CircuitSpec spec{TriangularBarrier{1.0, 1.0}, 0.99, {}};
  const auto root = solve_for_length(spec, 0);
  CHECK(root.wire_phase == doctest::Approx(-1.0957043).epsilon(1e-6));
  CHECK(root.pre_barrier_length == doctest::Approx(0.214950).epsilon(1e-5));
}

TEST_CASE("triangular off-root residual is loud") {
  const CircuitSpec spec{TriangularBarrier{1.0, 1.0}, 0.5, {}};
  const auto root = solve_for_length(spec, 0);
  const auto off = recover_coefficients(spec, root.wire_phase + 0.1);
  CHECK(std::fabs(off.boundary_residuals[3]) > 1e-3);
}

TEST_CASE("scan is deterministic and ordered") {
  const CircuitSpec spec{TriangularBarrier{1.0, 1.0}, 0.37, {}};
  const auto a = scan_roots(spec);
  const auto b = scan_roots(spec);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() >= 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].wire_phase == b[i].wire_phase);  // bit-identical
    CHECK(a[i].branch_index == (int)i);
    if (i > 0) CHECK(std::fabs(a[i].wire_phase) > std::fabs(a[i - 1].wire_phase));
  }
}

TEST_CASE("solve_for_length picks branches and reports misses") {
  const CircuitSpec spec{DeltaBarrier{1.0}, 1.0, {}};
  const auto second = solve_for_length(spec, 1);
  CHECK(second.pre_barrier_length == doctest::Approx(2.0 * kPi / wavenumber(1.0)));
  CHECK_THROWS_AS(solve_for_length(spec, 40), NoRootInWindow);
  CHECK_THROWS_AS(solve_for_length(spec, -1), std::domain_error);
  // Window with no roots at all.
  const CircuitSpec rect{RectangularBarrier{1.0, 0.1}, 0.5, {}};
  CHECK_THROWS_AS(solve_for_length(rect, 0, window(-0.2, -0.1)), NoRootInWindow);
}

TEST_CASE("scan window validation") {
  const CircuitSpec spec{DeltaBarrier{1.0}, 1.0, {}};
  CHECK_THROWS_AS(scan_roots(spec, window(-1.0, -2.0)), std::domain_error);
  CHECK_THROWS_AS(scan_roots(spec, window(-1.0, -0.5, -1.0)), std::domain_error);
  // theta = 0 is excluded: a window hugging zero finds nothing.
  CHECK(scan_roots(spec, window(-1e-10, -1e-11)).empty());
}

TEST_CASE("rectangular coefficients satisfy every boundary row") {
  const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
  const auto roots = scan_roots(spec, window(-2.0 * kPi, 0.0));
  REQUIRE(!roots.empty());
  const auto coeffs = recover_coefficients(spec, roots[0].wire_phase);
  CHECK(coeffs.A == 1.0);
  // Frozen from the direct null-space solve at the symmetric-energy root.
  CHECK(coeffs.B == doctest::Approx(-0.1791761).epsilon(1e-5));
  CHECK(coeffs.C == doctest::Approx(0.4104120).epsilon(1e-5));
  CHECK(coeffs.D == doctest::Approx(0.5895880).epsilon(1e-5));
  for (double r : coeffs.boundary_residuals) CHECK(std::fabs(r) <= 1e-8);

  SUBCASE("off-root input reports a real residual, never silence") {
    const auto off = recover_coefficients(spec, roots[0].wire_phase + 0.1);
    CHECK(std::fabs(off.boundary_residuals[2]) > 1e-3);
  }
}

TEST_CASE("coefficient recovery across random roots") {
  std::mt19937 rng(8675309);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const double height = 0.2 + 1.8 * u01(rng);
    const double energy = height * (0.1 + 0.8 * u01(rng));
    CircuitSpec spec;
    spec.energy = energy;
    if (i % 3 == 0)
      spec.barrier = RectangularBarrier{height, 0.03 + 0.5 * u01(rng)};
    else if (i % 3 == 1)
      spec.barrier = TriangularBarrier{height, 0.05 + 1.5 * u01(rng)};
    else
      spec.barrier = DeltaBarrier{0.5 + u01(rng)};
    for (const auto& root : scan_roots(spec)) {
      const auto coeffs = recover_coefficients(spec, root.wire_phase);
      CAPTURE(energy);
      CAPTURE(root.wire_phase);
      for (double r : coeffs.boundary_residuals) REQUIRE(std::fabs(r) <= 1e-8);
    }
  }
}

TEST_CASE("triangular recovery flags a degenerate system") {
  const AiryQuad q = airy_eval(0.3);
  CHECK_THROWS_AS(recover_triangular_coefficients(q, q, 1.0, -kPi),
                  std::domain_error);
}

TEST_CASE("delta coefficients") {
  const CircuitSpec spec{DeltaBarrier{1.0}, 1.0, {}};
  const auto root = solve_for_length(spec, 0);
  const auto coeffs = recover_coefficients(spec, root.wire_phase);
  CHECK(coeffs.A == 1.0);
  CHECK(coeffs.B == 0.0);
  CHECK(coeffs.C == 1.0);
  CHECK(coeffs.D == 0.0);
  for (double r : coeffs.boundary_residuals) CHECK(std::fabs(r) <= 1e-8);
}

TEST_CASE("wavefunction trace") {
  SUBCASE("rectangular continuity and closure") {
    const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
    const auto root = solve_for_length(spec, 0);
    const auto coeffs = recover_coefficients(spec, root.wire_phase);
    const auto trace = trace_wavefunction(spec, coeffs, root.wire_phase, 201);
    REQUIRE(trace.samples.size() == 201);
    // psi_I(0) = A = 1 and psi_II(0) = C + D = 1
    CHECK(coeffs.C + coeffs.D == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace.junction_residual <= 1e-8);
    CHECK(trace.closure_residual <= 1e-8);
    CHECK(trace.samples.front().position ==
          doctest::Approx(-root.pre_barrier_length).epsilon(1e-12));
    CHECK(trace.samples.front().region == 1);
    CHECK(trace.samples.back().position == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(trace.samples.back().region == 2);
  }
  SUBCASE("three samples hit the ends") {
    const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
    const auto root = solve_for_length(spec, 0);
    const auto coeffs = recover_coefficients(spec, root.wire_phase);
    const auto trace = trace_wavefunction(spec, coeffs, root.wire_phase, 3);
    REQUIRE(trace.samples.size() == 3);
    CHECK(trace.samples.front().position ==
          doctest::Approx(-root.pre_barrier_length));
    CHECK(trace.samples.back().position == doctest::Approx(0.1));
  }
  SUBCASE("delta trace is a pure cosine hitting +-1 at the ends") {
    const CircuitSpec spec{DeltaBarrier{1.0}, 1.0, {}};
    const auto root = solve_for_length(spec, 0);  // theta = -pi
    const auto coeffs = recover_coefficients(spec, root.wire_phase);
    const auto trace = trace_wavefunction(spec, coeffs, root.wire_phase, 101);
    CHECK(std::fabs(std::fabs(trace.samples.front().value) - 1.0) < 1e-9);
    CHECK(std::fabs(std::fabs(trace.samples.back().value) - 1.0) < 1e-9);
    CHECK(trace.junction_residual <= 1e-12);
    CHECK(trace.closure_residual <= 1e-8);
  }
  SUBCASE("triangular closure") {
    const CircuitSpec spec{TriangularBarrier{1.0, 1.0}, 0.5, {}};
    const auto root = solve_for_length(spec, 0);
    const auto coeffs = recover_coefficients(spec, root.wire_phase);
    const auto trace = trace_wavefunction(spec, coeffs, root.wire_phase, 101);
    CHECK(trace.junction_residual <= 1e-8);
    CHECK(trace.closure_residual <= 1e-8);
  }
  SUBCASE("normalization fixes the discrete L2 norm to one") {
    const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
    const auto root = solve_for_length(spec, 0);
    const auto coeffs = recover_coefficients(spec, root.wire_phase);
    const auto trace =
        trace_wavefunction(spec, coeffs, root.wire_phase, 401, true);
    const double total = root.pre_barrier_length + 0.1;
    const double ds = total / 400.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
      const double w = (i == 0 || i + 1 == trace.samples.size()) ? 0.5 : 1.0;
      sum += w * trace.samples[i].value * trace.samples[i].value * ds;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("guards") {
    const CircuitSpec spec{RectangularBarrier{1.0, 0.1}, 0.5, {}};
    CoefficientSet coeffs;
    CHECK_THROWS_AS(trace_wavefunction(spec, coeffs, -1.0, 1), std::domain_error);
    CHECK_THROWS_AS(trace_wavefunction(spec, coeffs, 0.5, 10), std::domain_error);
  }
}

TEST_CASE("small-barrier law") {
  // For phi <= 0.05 the branch-0 length collapses onto b (V0 - E)/E with a
  // quadratic-in-phi error.
  for (double energy : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double beta = decay_constant(energy, 1.0);
    for (double phi : {0.004, 0.02, 0.05}) {
      const double b = phi / beta;
      const CircuitSpec spec{RectangularBarrier{1.0, b}, energy, {}};
      const auto roots = scan_roots(spec, window(-1.0, 0.0, 1e-5));
      REQUIRE(!roots.empty());
      const double linearized = b * (1.0 - energy) / energy;
      CAPTURE(energy);
      CAPTURE(phi);
      CHECK(std::fabs(roots[0].pre_barrier_length - linearized) <=
            2.0 * phi * phi * linearized);
    }
  }
}

TEST_CASE("scaled model tracks the limit condition") {
  const double limit = limit_phase_condition(0.5, 1.0, 0.5);
  const CircuitSpec spec{ScaledRectangularBarrier{1.0, 0.5, 1000.0}, 0.5, {}};
  const auto roots = scan_roots(spec, window(-2.0 * kPi - 0.5, 0.0, 1e-4));
  REQUIRE(roots.size() >= 2);
  CHECK(std::fabs(roots[0].wire_phase - limit) < 1e-2);
  // companion crossing approaches -2 pi
  CHECK(std::fabs(roots[1].wire_phase + 2.0 * kPi) < 1e-2);
}
