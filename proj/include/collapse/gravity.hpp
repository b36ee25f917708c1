#pragma once

#include "collapse/constants.hpp"

namespace collapse::gravity {

/// Homogeneous spherical body. mass, radius and density must satisfy
/// mass = (4 pi / 3) density radius^3 to relative 1e-6.
struct BodySpec {
    double mass = 0.0;    // kg
    double radius = 0.0;  // m
    double density = 0.0; // kg m^-3

    void validate() const;
    static BodySpec sphere(double radius, double density);
    static BodySpec from_mass_radius(double mass, double radius);
};

enum class SizeRegime { micro, transition, macro };

/// Minimum length uncertainty (Delta s)^2 = (G hbar / 2 c^3)^{2/3} s^{2/3}
/// accumulated over a world-line segment of length s.
double karolyhazy_uncertainty(double s);

struct CoherenceCell {
    double a_c = 0.0;  // m
    SizeRegime regime = SizeRegime::micro;
};

// The coherence-cell results summarize a stochastic-metric construction in
// Fourier space; only the end-result formulas are implemented here. Whether
// the short-wavelength cutoff of that construction matters is disputed in
// the literature and is not resolvable numerically.

/// Critical coherence-cell size:
///   micro (hbar^2/G >> M^3 R):  a_c = (hbar^2/G) / M^3
///   macro (hbar^2/G << M^3 R):  a_c = (hbar^2/G)^{1/3} R^{2/3} / M
/// The two expressions coincide (a_c = R) at M^3 R = hbar^2/G; within a
/// factor 10 of that point the regime is tagged `transition` and the macro
/// expression is reported.
CoherenceCell coherence_cell(const BodySpec& body);

/// Reduction time tau_c = m a_c^2 / hbar.
double reduction_time(double mass, double a_c);

struct TransitionPoint {
    double a_tr = 0.0;    // m
    double tau_tr = 0.0;  // s
    double m_tr = 0.0;    // kg
};

/// Solves a_c = R under the macro expression with M = (4 pi / 3) rho R^3;
/// at rho = 1 g/cc this lands near (1e-7 m, 1e3 s, 1e-17 kg).
TransitionPoint karolyhazy_transition(double density = 1000.0);

/// Gravitational interaction energy U(d) of two identical uniform spheres
/// (mass m, radius R) at center separation d: -G m^2 / d for d >= 2R and the
/// exact overlap polynomial
///   U(d) = -(G m^2 / R) [ 6/5 - (d/R)^2/2 + 3(d/R)^3/16 - (d/R)^5/160 ]
/// for d < 2R; U(0) = -(6/5) G m^2 / R.
double sphere_interaction_energy(double mass, double radius, double d);

/// Damping time tau_d = hbar / [U(d) - U(0)] for a superposed uniform
/// sphere. Returns +infinity at separation 0 (no superposition).
double diosi_damping_time(const BodySpec& body, double separation);

struct CriticalLength {
    double l_crit = 0.0;  // m
    SizeRegime regime = SizeRegime::macro;
};

/// Critical coherent width, by regime of R m^3 against hbar^2/G:
///   macro (R m^3 >> hbar^2/G):  l_crit = (hbar^2/(G m^3))^{1/4} R^{3/4}
///   micro (R m^3 << hbar^2/G):  l_crit = (hbar^2/(G m^3))^{1/2} R^{1/2}
/// Both branches cross l_crit = R at R m^3 = hbar^2/G.
CriticalLength diosi_critical_length(const BodySpec& body);

/// Dimensionless self-gravity coupling K = 2 G m^3 l / hbar^2
///   = 2 (l / L_planck) (m / m_planck)^3.
/// Dispersion inhibition becomes significant near K ~ 1.
double sn_coupling(double mass, double length);

/// Self-gravitating ground-state width a_0 = 2 hbar^2 / (G m^3).
double sn_ground_width(double mass);

/// K evaluated at the onset threshold: sn_coupling(m, sn_ground_width(m))
/// equals 4 for every mass.
inline constexpr double sn_onset_coupling = 4.0;

}  // namespace collapse::gravity
