#include "collapse/interferometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace collapse::interferometry {

void InterferometerSpec::validate() const {
    if (!(grating_period > 0.0) || !(particle_mass > 0.0) || !(velocity > 0.0) ||
        !(flight_time > 0.0) || nucleon_count <= 0)
        throw std::invalid_argument("InterferometerSpec: all fields must be positive");
    const double implied = particle_mass / phys::m_nucleon;
    if (std::abs(static_cast<double>(nucleon_count) / implied - 1.0) > 0.01)
        throw std::invalid_argument(
            "InterferometerSpec: nucleon_count inconsistent with mass");
}

double de_broglie_wavelength(double mass, double velocity) {
    if (!(mass > 0.0) || !(velocity > 0.0))
        throw std::invalid_argument("de_broglie_wavelength: inputs must be positive");
    return phys::h_planck / (mass * velocity);
}

double talbot_length(double grating_period, double lambda_db) {
    if (!(grating_period > 0.0) || !(lambda_db > 0.0))
        throw std::invalid_argument("talbot_length: inputs must be positive");
    return grating_period * grating_period / lambda_db;
}

double free_fall_speed(double distance, double g) {
    if (distance < 0.0) throw std::invalid_argument("free_fall_speed: distance < 0");
    return std::sqrt(2.0 * g * distance);
}

TliGravityLimit tli_gravity_limit(double grating_period, double initial_velocity,
                                  double g) {
    if (!(grating_period > 0.0) || !(initial_velocity > 0.0))
        throw std::invalid_argument("tli_gravity_limit: inputs must be positive");
    TliGravityLimit out;
    if (!(g > 0.0)) {
        out.max_mass = std::numeric_limits<double>::infinity();
        out.fall_speed_at_lt = 0.0;
        return out;
    }
    // L_T(m) = d^2 m v / h; the gravity speed gain over the traversal time
    // L_T / v reaches v when m = v h / (g d^2).
    out.max_mass =
        initial_velocity * phys::h_planck / (g * grating_period * grating_period);
    const double lt = talbot_length(
        grating_period, de_broglie_wavelength(out.max_mass, initial_velocity));
    out.fall_speed_at_lt = free_fall_speed(lt, g);
    return out;
}

double visibility_damping(double gamma, double t) {
    if (t < 0.0) throw std::invalid_argument("visibility_damping: t < 0");
    return std::exp(-gamma * t);
}

double interferometric_bound(long long nucleon_count, double superposition_time) {
    if (nucleon_count <= 0 || !(superposition_time > 0.0))
        throw std::invalid_argument("interferometric_bound: inputs must be positive");
    const double n = static_cast<double>(nucleon_count);
    return 1.0 / (n * n * superposition_time);
}

}  // namespace collapse::interferometry
