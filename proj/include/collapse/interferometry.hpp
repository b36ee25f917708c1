#pragma once

#include <string>
#include <vector>

#include "collapse/constants.hpp"

namespace collapse::interferometry {

/// Near-field matter-wave interferometer geometry and beam parameters.
struct InterferometerSpec {
    double grating_period = 0.0;  // m
    double particle_mass = 0.0;   // kg
    double velocity = 0.0;        // m/s
    double flight_time = 0.0;     // s
    long long nucleon_count = 0;

    /// Positive fields; nucleon_count within 1% of mass / m_nucleon.
    void validate() const;
};

/// lambda_dB = h / (m v).
double de_broglie_wavelength(double mass, double velocity);

/// Self-imaging distance L_T = d^2 / lambda_dB behind a grating of period d.
double talbot_length(double grating_period, double lambda_db);

/// Speed gained from rest in free fall over `distance`: sqrt(2 g L).
double free_fall_speed(double distance, double g = phys::g_earth);

struct TliGravityLimit {
    double max_mass = 0.0;          // kg
    double fall_speed_at_lt = 0.0;  // m/s, sqrt(2 g L_T) at the limit mass
};

/// Mass ceiling for a Talbot-Lau interferometer under gravity: the largest
/// mass whose speed gain g * (L_T / v) over the traversal of its own Talbot
/// length still stays below the required beam velocity v, i.e.
/// m_max = v h / (g d^2). For g <= 0 there is no ceiling and max_mass is
/// +infinity.
TliGravityLimit tli_gravity_limit(double grating_period, double initial_velocity,
                                  double g = phys::g_earth);

/// Fringe-visibility damping factor exp(-Gamma t). `gamma` may be the bare
/// collapse rate or a sum including environmental (collisional, thermal)
/// decoherence rates supplied by the caller.
double visibility_damping(double gamma, double t);

/// e-fold visibility bound lambda <= 1 / (n^2 t) from an undamped
/// interference observation with n nucleons over time t.
double interferometric_bound(long long nucleon_count, double superposition_time);

/// One row of the shipped experiment catalog.
struct ExperimentEntry {
    std::string name;
    long long nucleon_count = 0;
    double superposition_time = 0.0;  // s
    std::string regime_note;          // separation scale vs r_c
    double quoted_bound = 0.0;        // s^-1
    std::string source_note;
    bool time_inferred = false;  // true when t was back-solved from the bound
};

/// Built-in copy of data/experiments.json (kept byte-equivalent by a test).
std::vector<ExperimentEntry> builtin_experiment_catalog();

/// Loads a catalog file (JSON, schema documented in docs/formats.md).
std::vector<ExperimentEntry> load_experiment_catalog(const std::string& path);

}  // namespace collapse::interferometry
