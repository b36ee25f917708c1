// Python bindings for the main operations: closed-form calculators, rate
// formulas, catalogs and the batch runner. Trajectory-level work is normally
// driven through the CLI; run_json() exposes the same entry point here.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collapse/bounds.hpp"
#include "collapse/constants.hpp"
#include "collapse/csl.hpp"
#include "collapse/gravity.hpp"
#include "collapse/grw.hpp"
#include "collapse/interferometry.hpp"
#include "collapse/measurement.hpp"
#include "collapse/qmupl.hpp"
#include "collapse/rng.hpp"
#include "collapse/runner.hpp"
#include "collapse/version.hpp"

namespace py = pybind11;
using namespace collapse;

namespace {

csl::Vec3 to_vec3(const std::tuple<double, double, double>& t) {
    return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

std::vector<csl::Vec3> to_vec3_list(
    const std::vector<std::tuple<double, double, double>>& pts) {
    std::vector<csl::Vec3> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(to_vec3(p));
    return out;
}

const char* regime_name(gravity::SizeRegime r) {
    switch (r) {
        case gravity::SizeRegime::micro: return "micro";
        case gravity::SizeRegime::transition: return "transition";
        case gravity::SizeRegime::macro: return "macro";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamical wave-function-collapse calculators and simulators";
    m.attr("__version__") = version_string();

    auto constants = m.def_submodule("constants", "SI constants");
    constants.attr("hbar") = phys::hbar;
    constants.attr("h_planck") = phys::h_planck;
    constants.attr("G") = phys::G;
    constants.attr("c") = phys::c;
    constants.attr("amu") = phys::amu;
    constants.attr("m_nucleon") = phys::m_nucleon;
    constants.attr("m_electron") = phys::m_electron;
    constants.attr("g_earth") = phys::g_earth;
    constants.attr("planck_mass") = phys::planck_mass;
    constants.attr("planck_length") = phys::planck_length;
    constants.attr("e_charge") = phys::e_charge;
    constants.attr("eps0") = phys::eps0;
    constants.attr("a0_bohr") = phys::a0_bohr;

    m.def(
        "noise_increments",
        [](std::uint64_t seed, double dt, std::size_t n, std::uint64_t stream) {
            return make_noise_path(seed, dt, n, stream).increments;
        },
        py::arg("seed"), py::arg("dt"), py::arg("n_steps"),
        py::arg("stream") = 0,
        "Seeded Wiener increments (variance dt each), reproducible by seed");

    // Position-localization model (closed-form sector).
    m.def(
        "asymptotic_spreads",
        [](double mass, double lambda0, double m0) {
            const auto s = qmupl::asymptotic_spreads(mass, lambda0, m0);
            return std::make_pair(s.sigma_q, s.sigma_p);
        },
        py::arg("mass"), py::arg("lambda0") = 1e-2,
        py::arg("m0") = phys::m_nucleon);
    m.def(
        "spread_evolution",
        [](double mass, double phi1, double phi2, double t, double lambda0,
           double m0) {
            const auto s = qmupl::spread_evolution(mass, phi1, phi2, t, lambda0, m0);
            return std::make_pair(s.sigma_q, s.sigma_p);
        },
        py::arg("mass"), py::arg("phi1"), py::arg("phi2"), py::arg("t"),
        py::arg("lambda0") = 1e-2, py::arg("m0") = phys::m_nucleon);
    m.def("omega_scale", &qmupl::omega_scale, py::arg("lambda0"), py::arg("m0"));
    m.def("master_equation_decay", &qmupl::master_equation_decay,
          py::arg("rho0_offdiag"), py::arg("x"), py::arg("y"), py::arg("lambda_"),
          py::arg("n_particles"), py::arg("t"));

    // Measurement model.
    m.def(
        "collapse_probability",
        [](double gamma0, double b) {
            const auto p = measurement::collapse_probability(gamma0, b);
            return std::make_pair(p.p_plus, p.p_minus);
        },
        py::arg("gamma0"), py::arg("b"));
    m.def(
        "simulate_hitting",
        [](double gamma0, double b, double ds, std::uint64_t seed,
           std::uint64_t stream) {
            Philox rng(seed, stream);
            measurement::HittingOptions opts;
            opts.ds = ds;
            const auto r = measurement::simulate_hitting(gamma0, b, opts, rng);
            return py::make_tuple(
                r.outcome == measurement::Outcome::plus ? "plus" : "minus",
                r.s_col);
        },
        py::arg("gamma0"), py::arg("b"), py::arg("ds") = 1e-3,
        py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "pointer_separation",
        [](double t, double kappa_hbar, double t_interaction, double omega) {
            measurement::MeasurementSetup s;
            s.kappa_hbar = kappa_hbar;
            s.t_interaction = t_interaction;
            return measurement::pointer_separation(t, s, omega);
        },
        py::arg("t"), py::arg("kappa_hbar") = 1e-2,
        py::arg("t_interaction") = 1.0, py::arg("omega") = 5.02e-5);
    m.def("time_change", &measurement::time_change, py::arg("t"),
          py::arg("lambda_"), py::arg("kappa_hbar"), py::arg("t_max"));
    m.def("inverse_time_change", &measurement::inverse_time_change, py::arg("s"),
          py::arg("lambda_"), py::arg("kappa_hbar"));
    m.def(
        "collapse_time_chain",
        [](double pointer_mass, double kappa_hbar, double b, double lambda0,
           double m0) {
            measurement::MeasurementSetup s;
            s.pointer_mass = pointer_mass;
            s.kappa_hbar = kappa_hbar;
            s.b_threshold = b;
            const auto est = measurement::collapse_time_chain(s, lambda0, m0);
            py::dict out;
            out["s_col"] = est.s_col;
            out["t_col"] = est.t_col;
            out["x_at_t_col"] = est.x_at_t_col;
            out["lambda"] = est.lambda;
            return out;
        },
        py::arg("pointer_mass") = 1e-3, py::arg("kappa_hbar") = 1e-2,
        py::arg("b") = 35.0, py::arg("lambda0") = 1e-2,
        py::arg("m0") = phys::m_nucleon);

    // Continuous-localization rate calculators.
    m.def("decay_function", &csl::decay_function, py::arg("x"),
          py::arg("lambda_"), py::arg("r_c"));
    m.def(
        "many_particle_gamma",
        [](const std::vector<std::tuple<double, double, double>>& xp,
           const std::vector<std::tuple<double, double, double>>& xpp,
           double gamma, double r_c) {
            const auto a = to_vec3_list(xp);
            const auto b = to_vec3_list(xpp);
            return csl::many_particle_gamma(a, b, gamma, r_c);
        },
        py::arg("x_primed"), py::arg("x_doubleprimed"), py::arg("gamma"),
        py::arg("r_c"));
    m.def("cluster_rate", &csl::cluster_rate, py::arg("n_per_cluster"),
          py::arg("n_clusters"), py::arg("lambda_"));
    m.def(
        "small_distance_gamma",
        [](const std::vector<std::tuple<double, double, double>>& disp,
           double lambda, double r_c) {
            const auto d = to_vec3_list(disp);
            const auto r = csl::small_distance_gamma(d, lambda, r_c);
            return std::make_pair(r.gamma, r.in_validity_regime);
        },
        py::arg("displacements"), py::arg("lambda_"), py::arg("r_c"));
    m.def(
        "rigid_body_gamma",
        [](double density, double radius, double displacement, double gamma) {
            return csl::rigid_body_gamma({density, radius}, displacement, gamma);
        },
        py::arg("density"), py::arg("radius"), py::arg("displacement"),
        py::arg("gamma"));
    m.def("amplified_rate", &csl::amplified_rate, py::arg("total_mass"),
          py::arg("lambda0"), py::arg("m0") = phys::m_nucleon);
    m.def(
        "lambda_csl",
        [](double gamma, double r_c) {
            return csl::CslParams{gamma, r_c}.lambda_csl();
        },
        py::arg("gamma"), py::arg("r_c"));
    m.def("offdiag_decay_rate", &grw::offdiag_decay_rate, py::arg("x"),
          py::arg("y"), py::arg("lambda_grw"), py::arg("r_c"));

    // Gravity-induced collapse calculators.
    m.def("karolyhazy_uncertainty", &gravity::karolyhazy_uncertainty,
          py::arg("s"));
    m.def(
        "coherence_cell",
        [](double mass, double radius) {
            const auto cell = gravity::coherence_cell(
                gravity::BodySpec::from_mass_radius(mass, radius));
            return std::make_pair(cell.a_c, std::string(regime_name(cell.regime)));
        },
        py::arg("mass"), py::arg("radius"));
    m.def("reduction_time", &gravity::reduction_time, py::arg("mass"),
          py::arg("a_c"));
    m.def(
        "karolyhazy_transition",
        [](double density) {
            const auto tr = gravity::karolyhazy_transition(density);
            return std::make_tuple(tr.a_tr, tr.tau_tr, tr.m_tr);
        },
        py::arg("density") = 1000.0);
    m.def(
        "diosi_damping_time",
        [](double mass, double radius, double separation) {
            return gravity::diosi_damping_time(
                gravity::BodySpec::from_mass_radius(mass, radius), separation);
        },
        py::arg("mass"), py::arg("radius"), py::arg("separation"));
    m.def("sphere_interaction_energy", &gravity::sphere_interaction_energy,
          py::arg("mass"), py::arg("radius"), py::arg("d"));
    m.def(
        "diosi_critical_length",
        [](double mass, double radius) {
            const auto lc = gravity::diosi_critical_length(
                gravity::BodySpec::from_mass_radius(mass, radius));
            return std::make_pair(lc.l_crit, std::string(regime_name(lc.regime)));
        },
        py::arg("mass"), py::arg("radius"));
    m.def("sn_coupling", &gravity::sn_coupling, py::arg("mass"),
          py::arg("length"));
    m.def("sn_ground_width", &gravity::sn_ground_width, py::arg("mass"));

    // Interferometry.
    m.def("de_broglie_wavelength", &interferometry::de_broglie_wavelength,
          py::arg("mass"), py::arg("velocity"));
    m.def("talbot_length", &interferometry::talbot_length,
          py::arg("grating_period"), py::arg("lambda_db"));
    m.def("free_fall_speed", &interferometry::free_fall_speed,
          py::arg("distance"), py::arg("g") = phys::g_earth);
    m.def(
        "tli_gravity_limit",
        [](double grating_period, double velocity, double g) {
            const auto lim =
                interferometry::tli_gravity_limit(grating_period, velocity, g);
            return std::make_pair(lim.max_mass, lim.fall_speed_at_lt);
        },
        py::arg("grating_period"), py::arg("velocity"),
        py::arg("g") = phys::g_earth);
    m.def("visibility_damping", &interferometry::visibility_damping,
          py::arg("gamma"), py::arg("t"));
    m.def("interferometric_bound", &interferometry::interferometric_bound,
          py::arg("nucleon_count"), py::arg("superposition_time"));
    m.def("experiment_catalog", [] {
        py::list out;
        for (const auto& e : interferometry::builtin_experiment_catalog()) {
            py::dict d;
            d["name"] = e.name;
            d["nucleon_count"] = e.nucleon_count;
            d["superposition_time"] = e.superposition_time;
            d["regime_note"] = e.regime_note;
            d["quoted_bound"] = e.quoted_bound;
            d["source_note"] = e.source_note;
            d["time_inferred"] = e.time_inferred;
            out.append(d);
        }
        return out;
    });

    // Bounds.
    m.def("heating_rate", &bounds::heating_rate, py::arg("total_mass"),
          py::arg("r_c"), py::arg("lambda_"));
    m.def("igm_heating_budget_per_proton", &bounds::igm_heating_budget_per_proton);
    m.def("photon_emission_rate_free", &bounds::photon_emission_rate_free,
          py::arg("k"), py::arg("lambda_"));
    m.def("photon_emission_rate_hydrogen", &bounds::photon_emission_rate_hydrogen,
          py::arg("k"), py::arg("lambda_"), py::arg("a0_bohr") = phys::a0_bohr);
    m.def("hydrogen_emission_factor", &bounds::hydrogen_emission_factor,
          py::arg("k"), py::arg("a0_bohr") = phys::a0_bohr);
    m.def("colored_noise_multiplier", &bounds::colored_noise_multiplier,
          py::arg("gamma_of_omega"), py::arg("omega_k"));
    m.def("table1", [] {
        py::list out;
        for (const auto& r :
             bounds::catalog_distances(bounds::builtin_bounds_catalog())) {
            py::dict d;
            d["name"] = r.name;
            d["lambda_max"] = r.lambda_max;
            d["category"] = r.category == bounds::BoundCategory::laboratory
                                ? "laboratory"
                                : "cosmological";
            d["distance_from_csl"] =
                r.from_csl ? py::cast(*r.from_csl) : py::cast("Excluded");
            d["distance_from_adler"] =
                r.from_adler ? py::cast(*r.from_adler) : py::cast("Excluded");
            out.append(d);
        }
        return out;
    });
    m.def(
        "exclusion_map",
        [](const std::vector<double>& lambda_grid) {
            py::list out;
            for (const auto& cell : bounds::exclusion_map(
                     bounds::builtin_bounds_catalog(), lambda_grid)) {
                py::dict d;
                d["lambda"] = cell.lambda;
                d["allowed"] = cell.allowed;
                d["excluded_by"] = cell.excluded_by;
                d["distance_from_csl"] = cell.distance_from_csl;
                d["distance_from_adler"] = cell.distance_from_adler;
                out.append(d);
            }
            return out;
        },
        py::arg("lambda_grid"));

    // Batch runner (same entry point as the CLI).
    m.def(
        "run_json",
        [](const std::string& config_json) {
            return runner::run(runner::parse_config(config_json));
        },
        py::arg("config_json"),
        "Executes a JSON run configuration and returns the rendered output");
}
