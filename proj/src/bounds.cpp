#include "collapse/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse::bounds {

namespace {

double free_rate_prefactor() {
    // e^2 hbar / (2 pi^2 eps0 m0^2 c^3)
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return phys::e_charge * phys::e_charge * phys::hbar /
           (2.0 * pi2 * phys::eps0 * phys::m_nucleon * phys::m_nucleon *
            std::pow(phys::c, 3));
}

}  // namespace

double heating_rate(double total_mass, double r_c, double lambda) {
    if (!(total_mass > 0.0) || !(r_c > 0.0) || lambda < 0.0)
        throw std::invalid_argument("heating_rate: bad inputs");
    return 0.75 * lambda * phys::hbar * phys::hbar * total_mass /
           (r_c * r_c * phys::m_nucleon * phys::m_nucleon);
}

double lambda_from_heating_budget(double budget_watts, double total_mass,
                                  double r_c) {
    const double per_unit_lambda = heating_rate(total_mass, r_c, 1.0);
    return budget_watts / per_unit_lambda;
}

double igm_heating_budget_per_proton() {
    return heating_rate(phys::m_nucleon, 1e-7, 1e-8);
}

double photon_emission_rate_free(double k, double lambda) {
    if (!(k > 0.0)) throw std::domain_error("photon_emission_rate_free: k <= 0");
    if (lambda < 0.0)
        throw std::invalid_argument("photon_emission_rate_free: lambda < 0");
    return free_rate_prefactor() * lambda / k;
}

double hydrogen_emission_factor(double k, double a0_bohr) {
    if (k < 0.0 || !(a0_bohr > 0.0))
        throw std::domain_error("hydrogen_emission_factor: bad inputs");
    const double u = k * a0_bohr / 2.0;
    const double b = 1.0 + u * u;
    return 2.0 * (1.0 - 1.0 / (b * b));
}

double photon_emission_rate_hydrogen(double k, double lambda, double a0_bohr) {
    return hydrogen_emission_factor(k, a0_bohr) *
           photon_emission_rate_free(k, lambda);
}

double colored_noise_multiplier(
    const std::function<double(double)>& gamma_of_omega, double omega_k) {
    if (!gamma_of_omega)
        throw std::invalid_argument("colored_noise_multiplier: empty spectrum");
    return gamma_of_omega(omega_k);
}

int order_of_magnitude_distance(double bound, double reference) {
    if (!(bound > 0.0) || !(reference > 0.0))
        throw std::invalid_argument("order_of_magnitude_distance: bad inputs");
    return static_cast<int>(std::lround(std::log10(bound / reference)));
}

std::vector<DistanceEntry> catalog_distances(std::span<const BoundEntry> catalog,
                                             const ReferenceValues& refs) {
    if (catalog.empty())
        throw std::invalid_argument("catalog_distances: empty catalog");
    std::vector<DistanceEntry> out;
    out.reserve(catalog.size());
    for (const auto& e : catalog) {
        DistanceEntry d;
        d.name = e.name;
        d.lambda_max = e.lambda_max;
        d.category = e.category;
        // A reference value more than half an order of magnitude above the
        // bound is excluded; otherwise report the integer distance.
        const int dist_csl =
            order_of_magnitude_distance(e.lambda_max, refs.lambda_csl);
        if (dist_csl >= 0) d.from_csl = dist_csl;
        const int dist_adler =
            order_of_magnitude_distance(e.lambda_max, refs.lambda_adler);
        if (dist_adler >= 0) d.from_adler = dist_adler;
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<ExclusionCell> exclusion_map(std::span<const BoundEntry> catalog,
                                         std::span<const double> lambda_grid,
                                         const ReferenceValues& refs) {
    if (catalog.empty()) throw std::invalid_argument("exclusion_map: empty catalog");
    const auto binding = std::min_element(
        catalog.begin(), catalog.end(),
        [](const BoundEntry& a, const BoundEntry& b) {
            return a.lambda_max < b.lambda_max;
        });
    std::vector<ExclusionCell> out;
    out.reserve(lambda_grid.size());
    for (double lam : lambda_grid) {
        ExclusionCell cell;
        cell.lambda = lam;
        cell.allowed = lam <= binding->lambda_max;
        if (!cell.allowed) cell.excluded_by = binding->name;
        cell.distance_from_csl = order_of_magnitude_distance(lam, refs.lambda_csl);
        cell.distance_from_adler =
            order_of_magnitude_distance(lam, refs.lambda_adler);
        out.push_back(std::move(cell));
    }
    return out;
}

}  // namespace collapse::bounds
