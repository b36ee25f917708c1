#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collapse/constants.hpp"

namespace collapse::bounds {

enum class BoundCategory { laboratory, cosmological };

/// One upper bound on the collapse rate lambda, as shipped in the catalog.
struct BoundEntry {
    std::string name;
    double lambda_max = 0.0;   // s^-1
    double r_c_assumed = 1e-7; // m
    BoundCategory category = BoundCategory::laboratory;
    std::string note;
    std::string source;
};

/// Reference rates the catalog distances are measured against.
struct ReferenceValues {
    double lambda_csl = 2.2e-17;   // s^-1
    double lambda_adler = 2.2e-9;  // s^-1
};

/// Collapse-driven heating power for total mass M:
///   dE/dt = (3/4) lambda hbar^2 M / (r_c^2 m_N^2).
/// The rate factor lambda multiplies the printed textbook expression, which
/// is otherwise not dimensionally a power; see docs/formats.md.
double heating_rate(double total_mass, double r_c, double lambda);

/// Back-solves lambda from a heating budget (W) for the given mass and r_c.
double lambda_from_heating_budget(double budget_watts, double total_mass,
                                  double r_c);

/// Heating budget per proton (W) that saturates the ionized intergalactic
/// medium bound lambda ~ 1e-8 s^-1 at r_c = 1e-7 m. The budget is inferred
/// from the bound, not measured independently.
double igm_heating_budget_per_proton();

/// Spontaneous photon emission rate per unit photon wavenumber for a free
/// charged particle:
///   dGamma/dk = e^2 lambda hbar / (2 pi^2 eps0 m0^2 c^3 k).
double photon_emission_rate_free(double k, double lambda);

/// Suppression/enhancement factor for a bound (hydrogen-like) emitter:
///   2 [1 - (1 + (k a0 / 2)^2)^{-2}] times the free rate.
double photon_emission_rate_hydrogen(double k, double lambda, double a0_bohr);
double hydrogen_emission_factor(double k, double a0_bohr);

/// Multiplies a white-noise emission rate by the noise spectral density
/// gamma(omega_k); white noise corresponds to gamma == 1.
double colored_noise_multiplier(
    const std::function<double(double)>& gamma_of_omega, double omega_k);

/// Integer order-of-magnitude distance round(log10(bound / reference)).
int order_of_magnitude_distance(double bound, double reference);

/// Distance columns for one catalog entry; nullopt means the reference value
/// is excluded (bound below reference).
struct DistanceEntry {
    std::string name;
    double lambda_max = 0.0;
    BoundCategory category = BoundCategory::laboratory;
    std::optional<int> from_csl;
    std::optional<int> from_adler;
};

std::vector<DistanceEntry> catalog_distances(std::span<const BoundEntry> catalog,
                                             const ReferenceValues& refs = {});

struct ExclusionCell {
    double lambda = 0.0;
    bool allowed = true;
    std::string excluded_by;  // binding (smallest violated) bound
    int distance_from_csl = 0;
    int distance_from_adler = 0;
};

/// Classifies each lambda grid point against the catalog: a point is excluded
/// when it exceeds any bound; the binding bound is the smallest one.
std::vector<ExclusionCell> exclusion_map(std::span<const BoundEntry> catalog,
                                         std::span<const double> lambda_grid,
                                         const ReferenceValues& refs = {});

/// Built-in copy of data/bounds_catalog.json (kept equivalent by a test).
std::vector<BoundEntry> builtin_bounds_catalog();

/// Loads a catalog file (JSON, schema documented in docs/formats.md).
std::vector<BoundEntry> load_bounds_catalog(const std::string& path);

}  // namespace collapse::bounds
