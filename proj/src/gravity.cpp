#include "collapse/gravity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace collapse::gravity {

namespace {
constexpr double four_thirds_pi = 4.0 / 3.0 * std::numbers::pi;
inline double hbar2_over_g() { return phys::hbar * phys::hbar / phys::G; }
}  // namespace

void BodySpec::validate() const {
    if (!(mass > 0.0) || !(radius > 0.0) || !(density > 0.0))
        throw std::invalid_argument("BodySpec: all fields must be positive");
    const double implied = four_thirds_pi * density * radius * radius * radius;
    if (std::abs(implied / mass - 1.0) > 1e-6)
        throw std::invalid_argument("BodySpec: mass, radius, density inconsistent");
}

BodySpec BodySpec::sphere(double radius, double density) {
    BodySpec b;
    b.radius = radius;
    b.density = density;
    b.mass = four_thirds_pi * density * radius * radius * radius;
    b.validate();
    return b;
}

BodySpec BodySpec::from_mass_radius(double mass, double radius) {
    BodySpec b;
    b.mass = mass;
    b.radius = radius;
    b.density = mass / (four_thirds_pi * radius * radius * radius);
    b.validate();
    return b;
}

double karolyhazy_uncertainty(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("karolyhazy_uncertainty: s <= 0");
    const double coeff =
        std::pow(phys::G * phys::hbar / (2.0 * std::pow(phys::c, 3)), 2.0 / 3.0);
    return std::sqrt(coeff * std::pow(s, 2.0 / 3.0));
}

CoherenceCell coherence_cell(const BodySpec& body) {
    body.validate();
    const double m3r = std::pow(body.mass, 3) * body.radius;
    const double ratio = hbar2_over_g() / m3r;
    CoherenceCell out;
    if (ratio >= 10.0) {
        out.regime = SizeRegime::micro;
        out.a_c = hbar2_over_g() / std::pow(body.mass, 3);
    } else if (ratio <= 0.1) {
        out.regime = SizeRegime::macro;
        out.a_c = std::cbrt(hbar2_over_g()) * std::pow(body.radius, 2.0 / 3.0) /
                  body.mass;
    } else {
        out.regime = SizeRegime::transition;
        out.a_c = std::cbrt(hbar2_over_g()) * std::pow(body.radius, 2.0 / 3.0) /
                  body.mass;
    }
    return out;
}

double reduction_time(double mass, double a_c) {
    if (!(mass > 0.0) || !(a_c > 0.0))
        throw std::invalid_argument("reduction_time: inputs must be positive");
    return mass * a_c * a_c / phys::hbar;
}

TransitionPoint karolyhazy_transition(double density) {
    if (!(density > 0.0))
        throw std::invalid_argument("karolyhazy_transition: density <= 0");
    // a_c = R in the macro branch with M = (4 pi / 3) rho R^3 gives
    // R^{10/3} = (hbar^2/G)^{1/3} / ((4 pi / 3) rho).
    const double r = std::pow(
        std::cbrt(hbar2_over_g()) / (four_thirds_pi * density), 3.0 / 10.0);
    TransitionPoint out;
    out.a_tr = r;
    out.m_tr = four_thirds_pi * density * r * r * r;
    out.tau_tr = reduction_time(out.m_tr, out.a_tr);
    return out;
}

double sphere_interaction_energy(double mass, double radius, double d) {
    if (!(mass > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("sphere_interaction_energy: bad body");
    if (d < 0.0) throw std::invalid_argument("sphere_interaction_energy: d < 0");
    const double gm2 = phys::G * mass * mass;
    if (d >= 2.0 * radius) return -gm2 / d;
    const double u = d / radius;
    const double u2 = u * u;
    const double poly =
        1.2 - 0.5 * u2 + 3.0 / 16.0 * u2 * u - u2 * u2 * u / 160.0;
    return -gm2 / radius * poly;
}

double diosi_damping_time(const BodySpec& body, double separation) {
    body.validate();
    if (separation < 0.0)
        throw std::invalid_argument("diosi_damping_time: separation < 0");
    if (separation == 0.0) return std::numeric_limits<double>::infinity();
    const double du = sphere_interaction_energy(body.mass, body.radius, separation) -
                      sphere_interaction_energy(body.mass, body.radius, 0.0);
    if (!(du > 0.0)) return std::numeric_limits<double>::infinity();
    return phys::hbar / du;
}

CriticalLength diosi_critical_length(const BodySpec& body) {
    body.validate();
    const double m3r = std::pow(body.mass, 3) * body.radius;
    const double base = hbar2_over_g() / std::pow(body.mass, 3);  // length^... m
    CriticalLength out;
    if (m3r >= hbar2_over_g()) {
        out.regime = SizeRegime::macro;
        out.l_crit = std::pow(base, 0.25) * std::pow(body.radius, 0.75);
    } else {
        out.regime = SizeRegime::micro;
        out.l_crit = std::sqrt(base) * std::sqrt(body.radius);
    }
    return out;
}

double sn_coupling(double mass, double length) {
    if (!(mass > 0.0) || !(length > 0.0))
        throw std::invalid_argument("sn_coupling: inputs must be positive");
    return 2.0 * phys::G * std::pow(mass, 3) * length /
           (phys::hbar * phys::hbar);
}

double sn_ground_width(double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("sn_ground_width: mass <= 0");
    return 2.0 * phys::hbar * phys::hbar / (phys::G * std::pow(mass, 3));
}

}  // namespace collapse::gravity
