#pragma once

namespace nullpoint::constants {

// CODATA values, SI units. Used only to derive the working constant below.
inline constexpr double reduced_planck_js  = 1.054571817e-34;   // hbar [J s]
inline constexpr double electron_mass_kg   = 9.1093837015e-31;  // m_e [kg]
inline constexpr double elementary_charge  = 1.602176634e-19;   // e [C]

// hbar^2 / (2 m_e), expressed in eV nm^2. The whole library works in
// electronvolts and nanometers; this single constant carries the unit system.
inline constexpr double hbar2_over_2m =
    reduced_planck_js * reduced_planck_js /
    (2.0 * electron_mass_kg * elementary_charge) * 1e18;

}  // namespace nullpoint::constants
