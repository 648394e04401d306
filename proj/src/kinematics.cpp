#include "nullpoint/kinematics.hpp"

#include <cmath>
#include <stdexcept>

#include "nullpoint/constants.hpp"

namespace nullpoint {

double wavenumber(double energy) {
  if (!(energy >= 0.0))
    throw std::domain_error("wavenumber: energy must be non-negative");
  return std::sqrt(energy / constants::hbar2_over_2m);
}

double decay_constant(double energy, double height) {
  if (!(energy < height))
    throw std::domain_error(
        "decay_constant: requires E < V0 (no tunneling above the barrier)");
  return std::sqrt((height - energy) / constants::hbar2_over_2m);
}

TriangularKinematics triangular_kinematics(double energy, double height,
                                           double length) {
  if (!(energy > 0.0 && energy < height))
    throw std::domain_error("triangular_kinematics: requires 0 < E < V0");
  if (!(length > 0.0))
    throw std::domain_error("triangular_kinematics: requires c > 0");
  TriangularKinematics kin{};
  kin.wavenumber = wavenumber(energy);
  kin.airy_scale = std::cbrt(height / (constants::hbar2_over_2m * length));
  const double gc = kin.airy_scale * length;
  kin.entry_arg = -(1.0 - energy / height) * gc;
  kin.exit_arg = gc * energy / height;
  kin.scale_ratio = kin.airy_scale / kin.wavenumber;
  kin.barrier_length = length;
  kin.tunneling_extent = (1.0 - energy / height) * length;
  return kin;
}

double triangular_airy_arg(const TriangularKinematics& kin, double position) {
  return kin.entry_arg + kin.airy_scale * position;
}

void validate(const CircuitSpec& spec) {
  if (!(spec.energy > 0.0))
    throw std::domain_error("circuit: energy must be positive");
  if (spec.pre_barrier_length && !(*spec.pre_barrier_length > 0.0))
    throw std::domain_error("circuit: pre-barrier length must be positive");
  std::visit(
      [&](const auto& barrier) {
        using T = std::decay_t<decltype(barrier)>;
        if constexpr (std::is_same_v<T, RectangularBarrier>) {
          if (!(barrier.height > 0.0))
            throw std::domain_error("circuit: barrier height must be positive");
          if (!(barrier.length > 0.0))
            throw std::domain_error("circuit: barrier length must be positive");
          if (!(spec.energy < barrier.height))
            throw std::domain_error(
                "circuit: rectangular model requires E < V0");
        } else if constexpr (std::is_same_v<T, TriangularBarrier>) {
          if (!(barrier.height > 0.0))
            throw std::domain_error("circuit: barrier height must be positive");
          if (!(barrier.length > 0.0))
            throw std::domain_error("circuit: barrier length must be positive");
          if (!(spec.energy < barrier.height))
            throw std::domain_error("circuit: triangular model requires E < V0");
        } else if constexpr (std::is_same_v<T, DeltaBarrier>) {
          if (!(barrier.strength > 0.0))
            throw std::domain_error("circuit: delta strength must be positive");
        } else {
          if (!(barrier.height > 0.0))
            throw std::domain_error("circuit: barrier height must be positive");
          if (!(barrier.length > 0.0))
            throw std::domain_error("circuit: barrier length must be positive");
          if (!(barrier.scale >= 1.0))
            throw std::domain_error("circuit: scale factor must be >= 1");
          if (!(spec.energy < barrier.scale * barrier.height))
            throw std::domain_error(
                "circuit: scaled model requires E < xi * V0");
        }
      },
      spec.barrier);
}

}  // namespace nullpoint
