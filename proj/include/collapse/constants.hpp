#pragma once

#include <cmath>

namespace collapse::phys {

// CODATA 2018 values, raw SI double precision.
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double h_planck = 6.62607015e-34;      // J s
inline constexpr double G = 6.67430e-11;                // m^3 kg^-1 s^-2
inline constexpr double c = 299792458.0;                // m s^-1
inline constexpr double amu = 1.66053906660e-27;        // kg
inline constexpr double m_nucleon = 1.67262192369e-27;  // kg (proton mass)
inline constexpr double m_electron = 9.1093837015e-31;  // kg
inline constexpr double g_earth = 9.80665;              // m s^-2
inline constexpr double e_charge = 1.602176634e-19;     // C
inline constexpr double eps0 = 8.8541878128e-12;        // F m^-1
inline constexpr double a0_bohr = 5.29177210903e-11;    // m

// Derived so that the defining identities hold to machine precision.
inline const double planck_mass = std::sqrt(hbar * c / G);            // kg
inline const double planck_length = std::sqrt(hbar * G / (c * c * c));  // m

}  // namespace collapse::phys

namespace collapse {

/// SI constants bundled as a value type (convenient for bindings and for
/// passing an explicit constant set through pure formula evaluators).
struct PhysicalConstants {
    double hbar = phys::hbar;
    double G = phys::G;
    double c = phys::c;
    double amu = phys::amu;
    double m_nucleon = phys::m_nucleon;
    double g_earth = phys::g_earth;
    double planck_length = phys::planck_length;
    double planck_mass = phys::planck_mass;
    double e_charge = phys::e_charge;
    double eps0 = phys::eps0;
};

}  // namespace collapse
