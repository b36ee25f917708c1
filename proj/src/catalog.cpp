#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "collapse/bounds.hpp"
#include "collapse/interferometry.hpp"

namespace collapse::bounds {

std::vector<BoundEntry> builtin_bounds_catalog() {
    // Upper bounds on lambda (s^-1) at r_c ~ 1e-7 m. Entries whose
    // derivations live in cited experiments ship as data with source notes.
    return {
        {"matter-wave interferometry", 1e-5, 1e-7, BoundCategory::laboratory,
         "undamped interference of a 7000-nucleon molecule",
         "strongest interferometric bound to date"},
        {"decay of supercurrents (SQUIDs)", 1e-3, 1e-7,
         BoundCategory::laboratory, "persistent currents not disrupted",
         "superconducting-loop analysis"},
        {"spontaneous X-ray emission from Ge", 1e-11, 1e-7,
         BoundCategory::laboratory,
         "11 keV photon emission rate; sensitive to the noise spectrum "
         "(relaxed by a cutoff below 1e18 Hz)",
         "germanium detector radiation data"},
        {"proton decay", 10.0, 1e-7, BoundCategory::laboratory,
         "proton stability over cosmological lifetimes",
         "bound-state excitation analysis"},
        {"dissociation of cosmic hydrogen", 1.0, 1e-7,
         BoundCategory::cosmological,
         "cosmic hydrogen must survive the age of the universe",
         "bound-state excitation analysis"},
        {"heating of intergalactic medium (IGM)", 1e-9, 1e-7,
         BoundCategory::cosmological,
         "stochastic proton heating within the IGM thermal budget",
         "ionized IGM temperature between redshifts 2 and 4"},
        {"heating of interstellar dust grains", 1e-2, 1e-7,
         BoundCategory::cosmological, "grain temperatures not anomalously high",
         "interstellar grain thermal balance"},
    };
}

std::vector<BoundEntry> load_bounds_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bounds catalog: " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported bounds catalog schema");
    std::vector<BoundEntry> out;
    for (const auto& e : j.at("bounds")) {
        BoundEntry b;
        b.name = e.at("name").get<std::string>();
        b.lambda_max = e.at("lambda_max").get<double>();
        b.r_c_assumed = e.at("r_c_assumed").get<double>();
        const auto cat = e.at("category").get<std::string>();
        if (cat == "laboratory")
            b.category = BoundCategory::laboratory;
        else if (cat == "cosmological")
            b.category = BoundCategory::cosmological;
        else
            throw std::runtime_error("unknown bound category: " + cat);
        b.note = e.at("note").get<std::string>();
        b.source = e.at("source").get<std::string>();
        if (!(b.lambda_max > 0.0))
            throw std::runtime_error("bound " + b.name + ": lambda_max <= 0");
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace collapse::bounds

namespace collapse::interferometry {

std::vector<ExperimentEntry> builtin_experiment_catalog() {
    // superposition_time marked inferred was back-solved from the quoted
    // bound via t = 1 / (n^2 lambda_max); nominal entries carry a note.
    return {
        {"C60 fullerene far-field diffraction", 720, 1e-2,
         "separation well above r_c", 1.0 / (720.0 * 720.0 * 1e-2),
         "first large-molecule interference; nominal 10 ms flight time",
         false},
        {"KDTLI 7000 amu molecule record", 7000, 1.0 / (7000.0 * 7000.0 * 1e-5),
         "grating period comparable to r_c", 1e-5,
         "heaviest interfered particle; time back-solved from the quoted bound",
         true},
        {"OTIMA metal-cluster proposal", 1000000, 1e-2,
         "grating period comparable to r_c", 1e-10,
         "proposed time-domain cluster interferometer; nominal parameters",
         false},
        {"500k-nucleon latent-image confrontation", 500000, 1e-2,
         "grating period comparable to r_c", 4e-10,
         "scale at which the enhanced rate band is confronted", false},
    };
}

std::vector<ExperimentEntry> load_experiment_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment catalog: " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported experiment catalog schema");
    std::vector<ExperimentEntry> out;
    for (const auto& e : j.at("experiments")) {
        ExperimentEntry x;
        x.name = e.at("name").get<std::string>();
        x.nucleon_count = e.at("nucleon_count").get<long long>();
        x.superposition_time = e.at("superposition_time").get<double>();
        x.regime_note = e.at("regime_note").get<std::string>();
        x.quoted_bound = e.at("quoted_bound").get<double>();
        x.source_note = e.at("source_note").get<std::string>();
        x.time_inferred = e.at("time_inferred").get<bool>();
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace collapse::interferometry
