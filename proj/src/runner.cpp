#include "collapse/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "collapse/bounds.hpp"
#include "collapse/csl.hpp"
#include "collapse/ensemble.hpp"
#include "collapse/gravity.hpp"
#include "collapse/grw.hpp"
#include "collapse/interferometry.hpp"
#include "collapse/measurement.hpp"
#include "collapse/qmupl.hpp"
#include "collapse/version.hpp"

namespace collapse::runner {

namespace {

using nlohmann::json;

struct CommandSpec {
    std::set<std::string> required;
    std::set<std::string> optional;
};

const std::map<Command, CommandSpec>& command_specs() {
    static const std::map<Command, CommandSpec> specs = {
        {Command::qmupl,
         {{"mode", "mass", "lambda0", "sigma0", "t_final", "dt"},
          {"m0", "x0", "k0", "record_every", "x_min", "dx", "n_points",
           "norm_drift_tol", "omega_trap"}}},
        {Command::measure,
         {{"b", "ds"},
          {"gamma0", "c_plus_sq", "pointer_mass", "kappa_hbar", "lambda0", "m0",
           "max_steps"}}},
        {Command::grw,
         {{"lambda_grw", "r_c", "mass", "t_final", "dt_record", "x_min", "dx",
           "n_points", "sigma0"},
          {"n_particles", "separation", "x_probe", "y_probe"}}},
        {Command::csl,
         {{"op"},
          {"lambda", "r_c", "x_values", "n", "big_n", "gamma", "density",
           "radius", "displacements"}}},
        {Command::gravity, {{"op"}, {"mass", "radius", "density", "s_values"}}},
        {Command::interferometer,
         {{"op"},
          {"mass_amu", "velocity", "grating_period", "nucleon_count", "time"}}},
        {Command::bounds,
         {{"op"}, {"lambda_values", "mass", "r_c", "lambda", "k_values", "a0"}}},
    };
    return specs;
}

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

}  // namespace

Command command_from_name(const std::string& name) {
    if (name == "qmupl") return Command::qmupl;
    if (name == "measure") return Command::measure;
    if (name == "grw") return Command::grw;
    if (name == "csl") return Command::csl;
    if (name == "gravity") return Command::gravity;
    if (name == "interferometer") return Command::interferometer;
    if (name == "bounds") return Command::bounds;
    fail("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::qmupl: return "qmupl";
        case Command::measure: return "measure";
        case Command::grw: return "grw";
        case Command::csl: return "csl";
        case Command::gravity: return "gravity";
        case Command::interferometer: return "interferometer";
        case Command::bounds: return "bounds";
    }
    return "?";
}

double RunConfig::number(const std::string& key) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) fail("missing required parameter '" + key + "'");
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    fail("parameter '" + key + "' must be a number");
}

double RunConfig::number_or(const std::string& key, double fallback) const {
    return parameters.count(key) ? number(key) : fallback;
}

std::string RunConfig::text(const std::string& key) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) fail("missing required parameter '" + key + "'");
    if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
    fail("parameter '" + key + "' must be a string");
}

std::string RunConfig::text_or(const std::string& key,
                               const std::string& fallback) const {
    return parameters.count(key) ? text(key) : fallback;
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) fail("missing required parameter '" + key + "'");
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    fail("parameter '" + key + "' must be an array of numbers");
}

bool RunConfig::has(const std::string& key) const {
    return parameters.count(key) != 0;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("not valid JSON: ") + e.what());
    }
    static const std::set<std::string> top_keys = {
        "command",     "parameters",  "seed",     "n_trajectories",
        "output_path", "output_format", "n_threads"};
    for (const auto& [key, _] : j.items()) {
        if (!top_keys.count(key)) fail("unknown top-level key '" + key + "'");
    }
    if (!j.contains("command")) fail("missing 'command'");

    RunConfig cfg;
    cfg.command = command_from_name(j.at("command").get<std::string>());
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.n_trajectories = j.value("n_trajectories", std::size_t{1});
    cfg.output_path = j.value("output_path", std::string{});
    cfg.n_threads = j.value("n_threads", 0u);
    const auto fmt = j.value("output_format", std::string{"csv"});
    if (fmt == "csv")
        cfg.output_format = OutputFormat::csv;
    else if (fmt == "json")
        cfg.output_format = OutputFormat::json;
    else
        fail("output_format must be 'csv' or 'json'");

    const auto& spec = command_specs().at(cfg.command);
    if (j.contains("parameters")) {
        if (!j.at("parameters").is_object()) fail("'parameters' must be an object");
        for (const auto& [key, value] : j.at("parameters").items()) {
            if (!spec.required.count(key) && !spec.optional.count(key))
                fail("unknown parameter '" + key + "' for command '" +
                     command_name(cfg.command) + "'");
            if (value.is_number()) {
                cfg.parameters[key] = value.get<double>();
            } else if (value.is_string()) {
                cfg.parameters[key] = value.get<std::string>();
            } else if (value.is_array()) {
                std::vector<double> arr;
                for (const auto& x : value) {
                    if (!x.is_number())
                        fail("array parameter '" + key + "' must hold numbers");
                    arr.push_back(x.get<double>());
                }
                cfg.parameters[key] = std::move(arr);
            } else {
                fail("parameter '" + key + "' has unsupported type");
            }
        }
    }
    for (const auto& key : spec.required) {
        if (!cfg.parameters.count(key))
            fail("missing required parameter '" + key + "' for command '" +
                 command_name(cfg.command) + "'");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// command handlers
// ---------------------------------------------------------------------------

OutputTable run_qmupl(const RunConfig& cfg) {
    const auto mode = cfg.text("mode");
    qmupl::QmuplRunConfig qc;
    qc.mass = cfg.number("mass");
    qc.lambda = qc.mass / cfg.number_or("m0", phys::m_nucleon) * cfg.number("lambda0");
    qc.t_final = cfg.number("t_final");
    qc.dt = cfg.number("dt");
    if (cfg.has("omega_trap")) {
        qc.potential = qmupl::Potential::harmonic;
        qc.omega_trap = cfg.number("omega_trap");
    }
    qc.validate();
    const auto n_steps = static_cast<std::size_t>(std::llround(qc.t_final / qc.dt));
    const auto every = static_cast<std::size_t>(cfg.number_or("record_every", 1));
    const double sigma0 = cfg.number("sigma0");
    const double x0 = cfg.number_or("x0", 0.0);
    const double k0 = cfg.number_or("k0", 0.0);

    OutputTable out;
    if (mode == "gaussian") {
        out.columns = {"traj", "t", "x_mean", "k_mean", "sigma_q", "sigma_p"};
        const auto init = GaussianState::from_width(sigma0, x0, k0);
        auto rows_for = [&](std::size_t traj) {
            const auto noise = make_noise_path(cfg.seed, qc.dt, n_steps, traj);
            const auto states = qmupl::propagate_gaussian(qc, init, noise);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < states.size(); i += every) {
                const auto& s = states[i];
                rows.push_back({std::to_string(traj),
                                fmt(static_cast<double>(i) * qc.dt), fmt(s.x_mean),
                                fmt(s.k_mean), fmt(s.sigma_q()), fmt(s.sigma_p())});
            }
            return rows;
        };
        const auto all = run_ensemble<std::vector<std::vector<std::string>>>(
            cfg.n_trajectories, rows_for, cfg.n_threads);
        for (const auto& rows : all)
            out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    } else if (mode == "grid") {
        out.columns = {"traj", "t", "q_mean", "q_sigma"};
        GridSpec spec{cfg.number("x_min"), cfg.number("dx"),
                      static_cast<std::size_t>(cfg.number("n_points"))};
        const auto psi0 = make_gaussian_grid_state(spec, x0, k0, sigma0);
        qmupl::GridSdeOptions opts;
        opts.norm_drift_tol = cfg.number_or("norm_drift_tol", 1e-6);
        auto rows_for = [&](std::size_t traj) {
            const auto noise = make_noise_path(cfg.seed, qc.dt, n_steps, traj);
            const auto res = qmupl::integrate_grid_sde(qc, psi0, noise, opts);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < res.t.size(); i += every) {
                rows.push_back({std::to_string(traj), fmt(res.t[i]),
                                fmt(res.q_mean[i]), fmt(res.q_sigma[i])});
            }
            return rows;
        };
        const auto all = run_ensemble<std::vector<std::vector<std::string>>>(
            cfg.n_trajectories, rows_for, cfg.n_threads);
        for (const auto& rows : all)
            out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    } else {
        fail("qmupl mode must be 'gaussian' or 'grid'");
    }
    return out;
}

OutputTable run_measure(const RunConfig& cfg) {
    const double b = cfg.number("b");
    double gamma0;
    if (cfg.has("gamma0") == cfg.has("c_plus_sq"))
        fail("measure needs exactly one of 'gamma0' or 'c_plus_sq'");
    if (cfg.has("gamma0")) {
        gamma0 = cfg.number("gamma0");
    } else {
        const double p = cfg.number("c_plus_sq");
        if (!(p > 0.0) || !(p < 1.0)) fail("c_plus_sq must lie in (0, 1)");
        gamma0 = 0.5 * std::log(p / (1.0 - p));
    }
    measurement::HittingOptions opts;
    opts.ds = cfg.number("ds");
    opts.max_steps = static_cast<std::size_t>(cfg.number_or("max_steps", 5e7));
    opts.kappa_hbar = cfg.number_or("kappa_hbar", 1e-2);
    opts.lambda = cfg.number_or("pointer_mass", 1e-3) /
                  cfg.number_or("m0", phys::m_nucleon) *
                  cfg.number_or("lambda0", 1e-2);

    auto one = [&](std::size_t traj) {
        Philox rng(cfg.seed, traj);
        return measurement::simulate_hitting(gamma0, b, opts, rng);
    };
    const auto results = run_ensemble<measurement::HittingResult>(
        cfg.n_trajectories, one, cfg.n_threads);

    OutputTable out;
    out.columns = {"run", "outcome", "s_col", "t_col"};
    RunningStats s_stats;
    std::size_t n_plus = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const bool plus = r.outcome == measurement::Outcome::plus;
        n_plus += plus ? 1 : 0;
        s_stats.add(r.s_col);
        out.rows.push_back({std::to_string(i), plus ? "plus" : "minus",
                            fmt(r.s_col), fmt(r.t_col)});
    }
    out.summary.push_back(
        "p_plus=" + fmt(static_cast<double>(n_plus) /
                        static_cast<double>(results.size())));
    out.summary.push_back("mean_s=" + fmt(s_stats.mean()));
    return out;
}

OutputTable run_grw(const RunConfig& cfg) {
    grw::GrwParams params;
    params.lambda_grw = cfg.number("lambda_grw");
    params.r_c = cfg.number("r_c");
    params.n_particles = static_cast<long long>(cfg.number_or("n_particles", 1));
    params.validate();
    const double mass = cfg.number("mass");
    GridSpec spec{cfg.number("x_min"), cfg.number("dx"),
                  static_cast<std::size_t>(cfg.number("n_points"))};
    const double sigma0 = cfg.number("sigma0");
    const double sep = cfg.number_or("separation", 0.0);

    GridWavefunction psi0 = [&] {
        if (sep <= 0.0) return make_gaussian_grid_state(spec, 0.0, 0.0, sigma0);
        auto a = make_gaussian_grid_state(spec, -0.5 * sep, 0.0, sigma0);
        const auto b = make_gaussian_grid_state(spec, 0.5 * sep, 0.0, sigma0);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        a.normalize();
        return a;
    }();

    grw::GrwOptions opts;
    opts.dt_record = cfg.number("dt_record");
    opts.x_probe = cfg.number_or("x_probe", sep > 0.0 ? -0.5 * sep : 0.0);
    opts.y_probe = cfg.number_or("y_probe", sep > 0.0 ? 0.5 * sep : 0.0);
    const double t_final = cfg.number("t_final");

    auto one = [&](std::size_t traj) {
        Philox rng(cfg.seed, traj);
        return grw::evolve_grw(psi0, params, mass, t_final, opts, rng);
    };
    const auto results =
        run_ensemble<grw::GrwTrajectory>(cfg.n_trajectories, one, cfg.n_threads);

    OutputTable out;
    out.columns = {"traj", "time", "center"};
    RunningStats jumps;
    for (std::size_t i = 0; i < results.size(); ++i) {
        jumps.add(static_cast<double>(results[i].jumps.size()));
        for (const auto& j : results[i].jumps)
            out.rows.push_back({std::to_string(i), fmt(j.time), fmt(j.center)});
    }
    out.summary.push_back("mean_jump_count=" + fmt(jumps.mean()));
    return out;
}

OutputTable run_csl(const RunConfig& cfg) {
    const auto op = cfg.text("op");
    OutputTable out;
    if (op == "decay_function") {
        out.columns = {"x", "gamma_rate"};
        const double lambda = cfg.number("lambda");
        const double r_c = cfg.number("r_c");
        for (double x : cfg.numbers("x_values"))
            out.rows.push_back({fmt(x), fmt(csl::decay_function(x, lambda, r_c))});
    } else if (op == "cluster_rate") {
        out.columns = {"n", "big_n", "gamma_rate"};
        const auto n = static_cast<long long>(cfg.number("n"));
        const auto big_n = static_cast<long long>(cfg.number("big_n"));
        out.rows.push_back(
            {std::to_string(n), std::to_string(big_n),
             fmt(csl::cluster_rate(n, big_n, cfg.number("lambda")))});
    } else if (op == "rigid_sphere") {
        out.columns = {"displacement", "gamma_rate"};
        csl::RigidBody body{cfg.number("density"), cfg.number("radius")};
        const double gamma = cfg.number("gamma");
        for (double d : cfg.numbers("displacements"))
            out.rows.push_back({fmt(d), fmt(csl::rigid_body_gamma(body, d, gamma))});
    } else {
        fail("csl op must be decay_function, cluster_rate or rigid_sphere");
    }
    return out;
}

OutputTable run_gravity(const RunConfig& cfg) {
    const auto op = cfg.text("op");
    OutputTable out;
    if (op == "body") {
        const auto body = gravity::BodySpec::from_mass_radius(
            cfg.number("mass"), cfg.number("radius"));
        const auto cell = gravity::coherence_cell(body);
        const auto lcrit = gravity::diosi_critical_length(body);
        auto regime_name = [](gravity::SizeRegime r) {
            switch (r) {
                case gravity::SizeRegime::micro: return "micro";
                case gravity::SizeRegime::transition: return "transition";
                case gravity::SizeRegime::macro: return "macro";
            }
            return "?";
        };
        out.columns = {"quantity", "value"};
        out.rows = {
            {"coherence_cell_m", fmt(cell.a_c)},
            {"coherence_regime", regime_name(cell.regime)},
            {"reduction_time_s", fmt(gravity::reduction_time(body.mass, cell.a_c))},
            {"critical_length_m", fmt(lcrit.l_crit)},
            {"critical_length_regime", regime_name(lcrit.regime)},
            {"sn_ground_width_m", fmt(gravity::sn_ground_width(body.mass))},
            {"sn_coupling_at_ground_width",
             fmt(gravity::sn_coupling(body.mass,
                                      gravity::sn_ground_width(body.mass)))},
        };
    } else if (op == "transition") {
        const auto tr = gravity::karolyhazy_transition(cfg.number_or("density", 1000.0));
        out.columns = {"quantity", "value"};
        out.rows = {{"a_tr_m", fmt(tr.a_tr)},
                    {"tau_tr_s", fmt(tr.tau_tr)},
                    {"m_tr_kg", fmt(tr.m_tr)}};
    } else if (op == "uncertainty") {
        out.columns = {"s", "delta_s"};
        for (double s : cfg.numbers("s_values"))
            out.rows.push_back({fmt(s), fmt(gravity::karolyhazy_uncertainty(s))});
    } else {
        fail("gravity op must be body, transition or uncertainty");
    }
    return out;
}

OutputTable run_interferometer(const RunConfig& cfg) {
    const auto op = cfg.text("op");
    OutputTable out;
    if (op == "feasibility") {
        const double mass = cfg.number("mass_amu") * phys::amu;
        const double v = cfg.number("velocity");
        const double d = cfg.number("grating_period");
        const double ldb = interferometry::de_broglie_wavelength(mass, v);
        const double lt = interferometry::talbot_length(d, ldb);
        const auto limit = interferometry::tli_gravity_limit(d, v);
        out.columns = {"quantity", "value"};
        out.rows = {
            {"de_broglie_wavelength_m", fmt(ldb)},
            {"talbot_length_m", fmt(lt)},
            {"free_fall_speed_at_lt", fmt(interferometry::free_fall_speed(lt))},
            {"gravity_limited_mass_amu", fmt(limit.max_mass / phys::amu)},
        };
        if (cfg.has("nucleon_count") && cfg.has("time")) {
            const auto n = static_cast<long long>(cfg.number("nucleon_count"));
            out.rows.push_back(
                {"lambda_bound",
                 fmt(interferometry::interferometric_bound(n, cfg.number("time")))});
        }
    } else if (op == "catalog") {
        out.columns = {"name", "nucleon_count", "superposition_time",
                       "quoted_bound", "efold_bound", "time_inferred"};
        for (const auto& e : interferometry::builtin_experiment_catalog()) {
            out.rows.push_back(
                {e.name, std::to_string(e.nucleon_count),
                 fmt(e.superposition_time), fmt(e.quoted_bound),
                 fmt(interferometry::interferometric_bound(e.nucleon_count,
                                                           e.superposition_time)),
                 e.time_inferred ? "yes" : "no"});
        }
    } else {
        fail("interferometer op must be feasibility or catalog");
    }
    return out;
}

OutputTable run_bounds(const RunConfig& cfg) {
    const auto op = cfg.text("op");
    OutputTable out;
    const auto catalog = bounds::builtin_bounds_catalog();
    if (op == "table1") {
        out.columns = {"name", "category", "lambda_max", "distance_from_csl",
                       "distance_from_adler"};
        for (const auto& d : bounds::catalog_distances(catalog)) {
            out.rows.push_back(
                {d.name,
                 d.category == bounds::BoundCategory::laboratory ? "laboratory"
                                                                 : "cosmological",
                 fmt(d.lambda_max),
                 d.from_csl ? std::to_string(*d.from_csl) : "Excluded",
                 d.from_adler ? std::to_string(*d.from_adler) : "Excluded"});
        }
    } else if (op == "map") {
        out.columns = {"lambda", "allowed", "excluded_by", "distance_from_csl",
                       "distance_from_adler"};
        const auto grid = cfg.numbers("lambda_values");
        for (const auto& cell : bounds::exclusion_map(catalog, grid)) {
            out.rows.push_back({fmt(cell.lambda), cell.allowed ? "yes" : "no",
                                cell.allowed ? "-" : cell.excluded_by,
                                std::to_string(cell.distance_from_csl),
                                std::to_string(cell.distance_from_adler)});
        }
    } else if (op == "heating") {
        out.columns = {"quantity", "value"};
        const double rate = bounds::heating_rate(
            cfg.number("mass"), cfg.number("r_c"), cfg.number("lambda"));
        out.rows = {{"heating_rate_w", fmt(rate)},
                    {"igm_budget_per_proton_w",
                     fmt(bounds::igm_heating_budget_per_proton())}};
    } else if (op == "emission") {
        out.columns = {"k", "free_rate", "hydrogen_rate", "hydrogen_factor"};
        const double lambda = cfg.number("lambda");
        const double a0 = cfg.number_or("a0", phys::a0_bohr);
        for (double k : cfg.numbers("k_values")) {
            out.rows.push_back(
                {fmt(k), fmt(bounds::photon_emission_rate_free(k, lambda)),
                 fmt(bounds::photon_emission_rate_hydrogen(k, lambda, a0)),
                 fmt(bounds::hydrogen_emission_factor(k, a0))});
        }
    } else {
        fail("bounds op must be table1, map, heating or emission");
    }
    return out;
}

std::string render(const RunConfig& cfg, const OutputTable& table) {
    json params(json::value_t::object);
    for (const auto& [key, value] : cfg.parameters) {
        if (const double* v = std::get_if<double>(&value))
            params[key] = *v;
        else if (const std::string* s = std::get_if<std::string>(&value))
            params[key] = *s;
        else
            params[key] = std::get<std::vector<double>>(value);
    }

    std::ostringstream os;
    os << "# collapsekit " << version_string() << "\n";
    os << "# command: " << command_name(cfg.command) << "\n";
    os << "# seed: " << cfg.seed << "\n";
    os << "# n_trajectories: " << cfg.n_trajectories << "\n";
    os << "# units: SI throughout; no nondimensionalization applied\n";
    os << "# parameters: " << params.dump() << "\n";

    if (cfg.output_format == OutputFormat::csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) os << ',';
            os << table.columns[i];
        }
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << row[i];
            }
            os << '\n';
        }
        for (const auto& s : table.summary) os << "# summary: " << s << "\n";
    } else {
        json doc(json::value_t::object);
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        doc["summary"] = table.summary;
        os << doc.dump(1) << "\n";
    }
    return os.str();
}

}  // namespace

std::string run(const RunConfig& cfg) {
    OutputTable table;
    switch (cfg.command) {
        case Command::qmupl: table = run_qmupl(cfg); break;
        case Command::measure: table = run_measure(cfg); break;
        case Command::grw: table = run_grw(cfg); break;
        case Command::csl: table = run_csl(cfg); break;
        case Command::gravity: table = run_gravity(cfg); break;
        case Command::interferometer: table = run_interferometer(cfg); break;
        case Command::bounds: table = run_bounds(cfg); break;
    }
    const std::string content = render(cfg, table);
    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) fail("cannot write output file " + cfg.output_path);
        out << content;
    }
    return content;
}

}  // namespace collapse::runner
