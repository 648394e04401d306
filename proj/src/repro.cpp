#include "nullpoint/repro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

namespace nullpoint::repro {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// Deterministic fan-out: each cell lands in its slot regardless of schedule.
template <typename Fn>
void for_each_cell(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

struct CellIndex {
  int energy_idx;
  int length_idx;
};

std::vector<CellIndex> table_order() {
  // (E, length) lexicographic, ascending.
  std::vector<CellIndex> order;
  order.reserve(105);
  for (int i = 20; i >= 0; --i)
    for (int j = 0; j < 5; ++j) order.push_back({i, j});
  return order;
}

Agreement classify(double reference, double exact_length, double ratio_r,
                   bool has_linearized) {
  if (std::fabs(reference - exact_length) <= 0.005 * exact_length)
    return Agreement::kExact;
  if (std::fabs(reference * 1e-3 - exact_length) <= 0.005 * exact_length)
    return Agreement::kUnitShift;
  if (has_linearized && std::fabs(ratio_r - 1.0) <= 0.01)
    return Agreement::kLinearizedMatch;
  return Agreement::kOutlier;
}

std::string outlier_note(const std::vector<TableCell>& cells) {
  std::ostringstream os;
  os << "outlier cells (E, length):";
  bool any = false;
  for (const auto& cell : cells)
    if (cell.agreement == Agreement::kOutlier) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " (%.2f, %.1f)", cell.energy,
                    cell.barrier_length);
      os << buf;
      any = true;
    }
  if (!any) os << " none";
  return os.str();
}

}  // namespace

std::string_view to_string(Agreement a) {
  switch (a) {
    case Agreement::kExact:
      return "EXACT";
    case Agreement::kUnitShift:
      return "UNIT-SHIFT";
    case Agreement::kLinearizedMatch:
      return "LINEARIZED-MATCH";
    case Agreement::kOutlier:
    default:
      return "OUTLIER";
  }
}

std::size_t TableReport::count(Agreement a) const {
  return std::count_if(cells.begin(), cells.end(),
                       [a](const TableCell& c) { return c.agreement == a; });
}

TableReport reproduce_table1(double height, int jobs) {
  const auto order = table_order();
  TableReport report;
  report.cells.resize(order.size());
  for_each_cell(order.size(), jobs, [&](std::size_t idx) {
    const auto [i, j] = order[idx];
    const double energy = table_energies()[i];
    const double length = table_lengths()[j];
    TableCell cell{};
    cell.energy = energy;
    cell.barrier_length = length;
    cell.reference_value = table1_reference(i, j);
    cell.linearized_length = length * (height - energy) / energy;

    CircuitSpec spec{RectangularBarrier{height, length}, energy, {}};
    SolverOptions options;
    options.phase_min = -2.0 * kPi - 0.5;
    options.grid_step = 2.5e-4;
    const auto roots = scan_roots(spec, options);
    cell.exact_phase = roots.empty() ? kNan : roots[0].wire_phase;
    cell.exact_length = roots.empty() ? kNan : roots[0].pre_barrier_length;
    cell.det_residual = roots.empty() ? kNan : roots[0].det_residual;
    cell.second_length = roots.size() > 1 ? roots[1].pre_barrier_length : kNan;

    cell.ratio_diagnostic = cell.reference_value * (kPi / 180.0) * energy /
                            (length * (height - energy));
    cell.agreement = classify(cell.reference_value, cell.exact_length,
                              cell.ratio_diagnostic, true);
    report.cells[idx] = cell;
  });
  report.notes.push_back(
      "reference values track the linearized length b (V0 - E) / E expressed "
      "in degrees (factor 180/pi), not the exact branch-0 root length in nm");
  report.notes.push_back(
      "within each energy row the linearized lengths are exactly proportional "
      "to b; the reference's claimed proportionality to E does not hold (the "
      "lengths decrease as E grows)");
  report.notes.push_back(outlier_note(report.cells));
  return report;
}

TableReport reproduce_table2(double height, int jobs) {
  const auto order = table_order();
  TableReport report;
  report.cells.resize(order.size());
  for_each_cell(order.size(), jobs, [&](std::size_t idx) {
    const auto [i, j] = order[idx];
    const double energy = table_energies()[i];
    const double length = table_lengths()[j];
    TableCell cell{};
    cell.energy = energy;
    cell.barrier_length = length;
    cell.reference_value = table2_reference(i, j);
    cell.linearized_length = kNan;

    CircuitSpec spec{TriangularBarrier{height, length}, energy, {}};
    const auto roots = scan_roots(spec, SolverOptions{});
    // Root nearest theta = -2 pi.
    const RootSolution* best = nullptr;
    const RootSolution* second = nullptr;
    for (const auto& root : roots) {
      if (!best || std::fabs(root.wire_phase + 2.0 * kPi) <
                       std::fabs(best->wire_phase + 2.0 * kPi)) {
        second = best;
        best = &root;
      } else if (!second || std::fabs(root.wire_phase + 2.0 * kPi) <
                                std::fabs(second->wire_phase + 2.0 * kPi)) {
        second = &root;
      }
    }
    cell.exact_phase = best ? best->wire_phase : kNan;
    cell.exact_length = best ? best->pre_barrier_length : kNan;
    cell.det_residual = best ? best->det_residual : kNan;
    cell.second_length = second ? second->pre_barrier_length : kNan;
    cell.ratio_diagnostic =
        best ? cell.reference_value * 1e-3 / cell.exact_length : kNan;
    cell.agreement = classify(cell.reference_value, cell.exact_length,
                              cell.ratio_diagnostic, false);
    report.cells[idx] = cell;
  });

  // The reference column is read as 1e-3 nm; state what it actually tracks.
  double worst_delta_family = 0.0;
  for (const auto& cell : report.cells) {
    const double two_pi_over_k = 2.0 * kPi / wavenumber(cell.energy);
    worst_delta_family =
        std::max(worst_delta_family,
                 std::fabs(cell.reference_value * 1e-3 - two_pi_over_k) /
                     two_pi_over_k);
  }
  report.notes.push_back(
      "unit finding: reference values are read as 1e-3 nm (picometers)");
  report.notes.push_back(format(
      "reference values coincide with the delta-model length 2 pi / k for "
      "every cell (worst relative gap %.2e), independent of c",
      worst_delta_family));
  report.notes.push_back(
      "the triangular determinant's own root nearest theta = -2 pi generally "
      "differs from the reference; see the per-cell agreement classes");
  report.notes.push_back(outlier_note(report.cells));
  return report;
}

Fig6Report fig6_stats(double height, double length, std::vector<double> energies,
                      int jobs) {
  if (energies.empty())
    energies.assign(table_energies().begin(), table_energies().end());
  Fig6Report report;
  report.points.resize(energies.size());
  for_each_cell(energies.size(), jobs, [&](std::size_t idx) {
    const double energy = energies[idx];
    CircuitSpec spec{TriangularBarrier{height, length}, energy, {}};
    const auto roots = scan_roots(spec, SolverOptions{});
    // The two crossings nearest -2 pi; their midpoint is the tracked family.
    std::vector<double> phases;
    phases.reserve(roots.size());
    for (const auto& root : roots) phases.push_back(root.wire_phase);
    std::sort(phases.begin(), phases.end(), [](double a, double b) {
      return std::fabs(a + 2.0 * kPi) < std::fabs(b + 2.0 * kPi);
    });
    Fig6Point point{};
    point.energy = energy;
    if (phases.size() >= 2) {
      point.lower_phase = std::min(phases[0], phases[1]);
      point.upper_phase = std::max(phases[0], phases[1]);
      point.midpoint_deg = 0.5 * (phases[0] + phases[1]) * 180.0 / kPi;
    } else if (phases.size() == 1) {
      point.lower_phase = point.upper_phase = phases[0];
      point.midpoint_deg = phases[0] * 180.0 / kPi;
    } else {
      point.lower_phase = point.upper_phase = kNan;
      point.midpoint_deg = kNan;
    }
    report.points[idx] = point;
  });

  double sum = 0.0, sum2 = 0.0, sum_e = 0.0, sum_e2 = 0.0, sum_et = 0.0;
  std::size_t n = 0;
  for (const auto& point : report.points) {
    if (std::isnan(point.midpoint_deg)) continue;
    sum += point.midpoint_deg;
    sum2 += point.midpoint_deg * point.midpoint_deg;
    sum_e += point.energy;
    sum_e2 += point.energy * point.energy;
    sum_et += point.energy * point.midpoint_deg;
    ++n;
  }
  RegressionStats stats{};
  stats.count = n;
  if (n > 0) {
    stats.mean_deg = sum / n;
    stats.stddev_deg =
        n > 1 ? std::sqrt(std::max(0.0, (sum2 - n * stats.mean_deg * stats.mean_deg) /
                                            (n - 1)))
              : 0.0;
    const double denom = n * sum_e2 - sum_e * sum_e;
    stats.slope = denom != 0.0 ? (n * sum_et - sum_e * sum) / denom : 0.0;
    stats.intercept = (sum - stats.slope * sum_e) / n;
  }
  report.stats = stats;
  report.notes.push_back(
      "statistics taken over the midpoint of the two crossings nearest "
      "theta = -360 deg for each energy");
  report.notes.push_back(format(
      "regenerated mean %.5f deg, stddev %.6f deg over %.0f energies",
      stats.mean_deg, stats.stddev_deg, (double)n));
  return report;
}

XiSweepReport xi_sweep(double height, double barrier_length, double energy,
                       std::vector<double> scales) {
  if (scales.empty()) scales = {1.0, 10.0, 100.0, 1000.0};
  XiSweepReport report;
  report.limit_phase = limit_phase_condition(energy, height, barrier_length);

  SolverOptions options;
  options.phase_min = -2.0 * kPi - 0.5;
  options.grid_step = 1e-4;

  double tracked = kNan;
  for (double scale : scales) {
    CircuitSpec spec{ScaledRectangularBarrier{height, barrier_length, scale},
                     energy,
                     {}};
    const auto roots = scan_roots(spec, options);
    if (roots.empty())
      throw NoRootInWindow("xi_sweep: no root found while tracking the branch");
    const RootSolution* pick = &roots[0];
    if (!std::isnan(tracked)) {
      for (const auto& root : roots)
        if (std::fabs(root.wire_phase - tracked) <
            std::fabs(pick->wire_phase - tracked))
          pick = &root;
    }
    const RootSolution* companion = nullptr;
    for (const auto& root : roots) {
      if (&root == pick) continue;
      if (!companion || std::fabs(root.wire_phase + 2.0 * kPi) <
                            std::fabs(companion->wire_phase + 2.0 * kPi))
        companion = &root;
    }
    XiSweepPoint point{};
    point.scale = scale;
    point.tracked_phase = pick->wire_phase;
    point.limit_gap = std::fabs(pick->wire_phase - report.limit_phase);
    point.companion_phase = companion ? companion->wire_phase : kNan;
    point.companion_gap_to_2pi =
        companion ? std::fabs(companion->wire_phase + 2.0 * kPi) : kNan;
    report.points.push_back(point);
    tracked = pick->wire_phase;
  }

  const auto& last = report.points.back();
  const bool to_limit = last.limit_gap < 0.05;
  report.family =
      to_limit ? "2 pi n: the tracked branch converges to the first-half-cycle "
                 "condition and its companion to theta = -2 pi; odd multiples "
                 "of -pi do not emerge"
               : "unresolved: the tracked branch did not settle on the "
                 "first-half-cycle condition";
  report.notes.push_back(format(
      "barrier area V0 b = %.6f eV nm at every xi by construction",
      height * barrier_length));
  report.notes.push_back(
      "the delta-function model's null points sit at theta = -n pi for any "
      "barrier strength alpha; endpoint matching forces B = D (D otherwise "
      "free, taken as 0)");
  report.notes.push_back(
      "only the even family theta = -2 pi n is shared between the large-xi "
      "limit and the delta model");
  return report;
}

}  // namespace nullpoint::repro
