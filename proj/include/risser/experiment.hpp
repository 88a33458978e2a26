// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links
//
// Batch experiment front end: plain key = value scenario configs, sweep
// execution, CSV emission, and run manifests that reproduce every output
// bit for bit.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "risser/eig_dist.hpp"
#include "risser/errors.hpp"
#include "risser/monte_carlo.hpp"
#include "risser/optimizer.hpp"
#include "risser/perf_analysis.hpp"
#include "risser/ris_model.hpp"
#include "risser/version.hpp"

namespace risser::cli {

// ---------------------------------------------------------------------------
// Key = value configuration
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace detail

/// Ordered key -> value map parsed from one `key = value` per line,
/// `#` comments. Later sources (command-line overrides) may replace values;
/// duplicates within one file are rejected.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config", "cannot open '" + path + "'");
        KeyValueConfig cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config", "line " + std::to_string(line_no) +
                                                " is not 'key = value'");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config",
                                  "line " + std::to_string(line_no) + ": empty key");
            if (cfg.values_.count(key))
                throw ConfigError(key, "duplicate key");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    void override_entry(const std::string& key, const std::string& value) {
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& dflt) const {
        auto it = values_.find(key);
        return it == values_.end() ? dflt : it->second;
    }

    double get_double(const std::string& key, double dflt) const {
        auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ConfigError(key, "not a number: '" + it->second + "'");
        }
    }

    std::int64_t get_int(const std::string& key, std::int64_t dflt) const {
        auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        try {
            std::size_t pos = 0;
            const std::int64_t v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ConfigError(key, "not an integer: '" + it->second + "'");
        }
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// ---------------------------------------------------------------------------
// Resolved experiment configuration
// ---------------------------------------------------------------------------

/// All settings a subcommand can consume, validated up front. The manifest
/// writes these back out, so a saved manifest is itself a valid config.
struct ExperimentConfig {
    std::string scenario = "default";

    // amplitude law
    double zeta_min = 0.8;
    double c_over_pi = 0.43;
    double k = 1.6;
    std::string amplitude_variant = "standard";

    // surface, scheme, modulation
    std::int64_t n_ris = 32;
    std::string scheme = "G2";
    std::int64_t mod_order = 2;

    // phase source
    std::string phase_mode = "codebook"; // fixed | uniform | codebook | file
    double phase_value = numerics::kPi;
    std::int64_t codebook_bits = 2;
    std::string phase_file;

    // sweep
    double snr_start_db = 0.0;
    double snr_stop_db = 20.0;
    double snr_step_db = 2.0;
    std::string snr_axis = "received"; // received | transmit

    std::string method; // per-subcommand default filled in resolve()

    std::int64_t trials = 1000000;
    std::int64_t batch = 1 << 16;
    std::uint64_t seed = 1;
    std::int64_t bins = 100;

    // optimizer
    std::int64_t groups = 1;
    std::int64_t candidates = 10000;

    // geometry
    double f_c_ghz = 3.8;
    double d_tx = 30.0, d_ty = 40.0, d_rx = 30.0, d_ry = 40.0;
    double g_t = 1.0, g_r = 1.0;
    double d_m = 4.0397, d_n = 4.0397;
    double wavelength_m = 0.0; // 0 = derive from f_c_ghz

    std::string out;
    std::string subcommand;

    model::AmplitudeLaw law() const {
        model::AmplitudeVariant variant;
        if (amplitude_variant == "standard")
            variant = model::AmplitudeVariant::Standard;
        else if (amplitude_variant == "literal")
            variant = model::AmplitudeVariant::Literal;
        else
            throw ConfigError("amplitude_variant",
                              "must be 'standard' or 'literal'");
        model::AmplitudeLaw law{zeta_min, c_over_pi * numerics::kPi, k, variant};
        law.validate();
        return law;
    }

    model::OstbcScheme ostbc() const { return model::OstbcScheme::from_name(scheme); }

    model::LinkGeometry geometry() const {
        model::LinkGeometry geom;
        geom.d_tx = d_tx;
        geom.d_ty = d_ty;
        geom.d_rx = d_rx;
        geom.d_ry = d_ry;
        geom.f_c_hz = f_c_ghz * 1e9;
        geom.g_t = g_t;
        geom.g_r = g_r;
        geom.d_m = d_m;
        geom.d_n = d_n;
        geom.wavelength_override = wavelength_m;
        geom.validate();
        return geom;
    }

    mc::RunSpec run_spec() const { return {seed, trials, batch}; }

    std::vector<std::string> methods() const {
        std::vector<std::string> out_list;
        std::stringstream ss(method);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) out_list.push_back(item);
        }
        return out_list;
    }
};

namespace detail {

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "scenario", "zeta_min", "c_over_pi", "k", "amplitude_variant",
        "n_ris", "scheme", "mod_order", "phase_mode", "phase_value",
        "codebook_bits", "phase_file", "snr_start_db", "snr_stop_db",
        "snr_step_db", "snr_axis", "method", "trials", "batch", "seed",
        "bins", "groups", "candidates", "f_c_ghz", "d_tx", "d_ty", "d_rx",
        "d_ry", "g_t", "g_r", "d_m", "d_n", "wavelength_m", "out",
        "subcommand", "toolkit_version"};
    return keys;
}

inline void check_known(const KeyValueConfig& kv) {
    for (const auto& [key, value] : kv.entries()) {
        (void)value;
        bool known = false;
        for (const auto& k : known_keys()) known |= (k == key);
        if (!known) throw ConfigError(key, "unknown key");
    }
}

} // namespace detail

/// Build and validate an ExperimentConfig for one subcommand.
inline ExperimentConfig resolve(const std::string& subcommand,
                                const KeyValueConfig& kv) {
    detail::check_known(kv);
    ExperimentConfig cfg;
    cfg.subcommand = subcommand;
    cfg.scenario = kv.get_string("scenario", cfg.scenario);
    cfg.zeta_min = kv.get_double("zeta_min", cfg.zeta_min);
    cfg.c_over_pi = kv.get_double("c_over_pi", cfg.c_over_pi);
    cfg.k = kv.get_double("k", cfg.k);
    cfg.amplitude_variant =
        kv.get_string("amplitude_variant", cfg.amplitude_variant);
    cfg.n_ris = kv.get_int("n_ris", cfg.n_ris);
    cfg.scheme = kv.get_string("scheme", cfg.scheme);
    cfg.mod_order = kv.get_int("mod_order", cfg.mod_order);
    cfg.phase_mode = kv.get_string("phase_mode", cfg.phase_mode);
    cfg.phase_value = kv.get_double("phase_value", cfg.phase_value);
    cfg.codebook_bits = kv.get_int("codebook_bits", cfg.codebook_bits);
    cfg.phase_file = kv.get_string("phase_file", cfg.phase_file);
    cfg.snr_start_db = kv.get_double("snr_start_db", cfg.snr_start_db);
    cfg.snr_stop_db = kv.get_double("snr_stop_db", cfg.snr_stop_db);
    cfg.snr_step_db = kv.get_double("snr_step_db", cfg.snr_step_db);
    cfg.snr_axis = kv.get_string("snr_axis", cfg.snr_axis);
    cfg.trials = kv.get_int("trials", cfg.trials);
    cfg.batch = kv.get_int("batch", cfg.batch);
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
    cfg.bins = kv.get_int("bins", cfg.bins);
    cfg.groups = kv.get_int("groups", cfg.groups);
    cfg.candidates = kv.get_int("candidates", cfg.candidates);
    cfg.f_c_ghz = kv.get_double("f_c_ghz", cfg.f_c_ghz);
    cfg.d_tx = kv.get_double("d_tx", cfg.d_tx);
    cfg.d_ty = kv.get_double("d_ty", cfg.d_ty);
    cfg.d_rx = kv.get_double("d_rx", cfg.d_rx);
    cfg.d_ry = kv.get_double("d_ry", cfg.d_ry);
    cfg.g_t = kv.get_double("g_t", cfg.g_t);
    cfg.g_r = kv.get_double("g_r", cfg.g_r);
    cfg.d_m = kv.get_double("d_m", cfg.d_m);
    cfg.d_n = kv.get_double("d_n", cfg.d_n);
    cfg.wavelength_m = kv.get_double("wavelength_m", cfg.wavelength_m);

    const std::string default_method =
        subcommand == "pdf" ? "spa,lclt,empirical"
        : subcommand == "ser" ? "spa"
                              : "";
    cfg.method = kv.get_string("method", default_method);
    cfg.out = kv.get_string("out", subcommand + ".csv");

    // field-level validation before any computation starts
    if (cfg.n_ris < 1) throw ConfigError("n_ris", "must be >= 1");
    if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
    if (cfg.batch < 1) throw ConfigError("batch", "must be >= 1");
    if (cfg.mod_order < 2 || (cfg.mod_order & (cfg.mod_order - 1)) != 0)
        throw ConfigError("mod_order", "must be a power of two >= 2");
    if (cfg.codebook_bits < 1 || cfg.codebook_bits > 8)
        throw ConfigError("codebook_bits", "must lie in [1, 8]");
    if (cfg.phase_mode != "fixed" && cfg.phase_mode != "uniform" &&
        cfg.phase_mode != "codebook" && cfg.phase_mode != "file")
        throw ConfigError("phase_mode",
                          "must be fixed | uniform | codebook | file");
    if (cfg.phase_mode == "file" && cfg.phase_file.empty())
        throw ConfigError("phase_file", "required for phase_mode = file");
    if (cfg.snr_axis != "received" && cfg.snr_axis != "transmit")
        throw ConfigError("snr_axis", "must be 'received' or 'transmit'");
    if (subcommand == "ser" || subcommand == "asym" || subcommand == "mc") {
        if (cfg.snr_start_db > cfg.snr_stop_db)
            throw ConfigError("snr_start_db",
                              "empty sweep: snr_start_db > snr_stop_db");
        if (!(cfg.snr_step_db > 0.0))
            throw ConfigError("snr_step_db", "must be > 0");
    }
    if (subcommand == "optimize") {
        if (cfg.groups < 1) throw ConfigError("groups", "must be >= 1");
        if (cfg.groups > cfg.n_ris)
            throw ConfigError("groups", "must be <= n_ris");
        if (cfg.candidates < 1) throw ConfigError("candidates", "must be >= 1");
    }
    if (cfg.bins < 10) throw ConfigError("bins", "must be >= 10");
    (void)cfg.law();
    (void)cfg.ostbc();
    if (subcommand == "pathloss") (void)cfg.geometry();
    return cfg;
}

// ---------------------------------------------------------------------------
// Phase resolution
// ---------------------------------------------------------------------------

namespace detail {

// Stream id for phase draws, far above any Monte Carlo trial index.
inline constexpr std::uint64_t kPhaseStream = 0xFFFFFFFF00000001ull;

inline model::RisConfig resolve_phases(const ExperimentConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(cfg.n_ris);
    if (cfg.phase_mode == "fixed")
        return model::RisConfig::uniform(n, cfg.phase_value);
    if (cfg.phase_mode == "uniform") {
        mc::TrialRng rng(cfg.seed, kPhaseStream);
        std::vector<double> phases(n);
        for (auto& p : phases) p = model::kTwoPi * rng.u01();
        return model::RisConfig::from_phases(std::move(phases));
    }
    if (cfg.phase_mode == "codebook") {
        const auto cb = model::codebook(static_cast<int>(cfg.codebook_bits));
        mc::TrialRng rng(cfg.seed, kPhaseStream);
        std::vector<double> phases(n);
        for (auto& p : phases) p = cb.phases[rng.next_u64() % cb.phases.size()];
        return model::RisConfig::from_phases(std::move(phases));
    }
    // file
    std::ifstream in(cfg.phase_file);
    if (!in) throw ConfigError("phase_file", "cannot open '" + cfg.phase_file + "'");
    std::vector<double> phases;
    double v;
    while (in >> v) phases.push_back(v);
    if (phases.size() != n)
        throw ConfigError("phase_file",
                          "expected " + std::to_string(n) + " phases, found " +
                              std::to_string(phases.size()));
    return model::RisConfig::from_phases(std::move(phases));
}

// ---------------------------------------------------------------------------
// CSV and manifest writing
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw ConfigError("out", "cannot open '" + path + "' for writing");
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

inline void write_manifest(const ExperimentConfig& cfg,
                           const std::vector<std::string>& extra_comments = {}) {
    std::ofstream out(cfg.out + ".manifest");
    if (!out)
        throw ConfigError("out", "cannot open '" + cfg.out + ".manifest'");
    out << "# risser run manifest; usable directly as a config file\n";
    for (const auto& c : extra_comments) out << "# " << c << "\n";
    out << "toolkit_version = " << kVersion << "\n";
    out << "subcommand = " << cfg.subcommand << "\n";
    out << "scenario = " << cfg.scenario << "\n";
    out << "zeta_min = " << format_double(cfg.zeta_min) << "\n";
    out << "c_over_pi = " << format_double(cfg.c_over_pi) << "\n";
    out << "k = " << format_double(cfg.k) << "\n";
    out << "amplitude_variant = " << cfg.amplitude_variant << "\n";
    out << "n_ris = " << cfg.n_ris << "\n";
    out << "scheme = " << cfg.scheme << "\n";
    out << "mod_order = " << cfg.mod_order << "\n";
    out << "phase_mode = " << cfg.phase_mode << "\n";
    out << "phase_value = " << format_double(cfg.phase_value) << "\n";
    out << "codebook_bits = " << cfg.codebook_bits << "\n";
    if (!cfg.phase_file.empty()) out << "phase_file = " << cfg.phase_file << "\n";
    out << "snr_start_db = " << format_double(cfg.snr_start_db) << "\n";
    out << "snr_stop_db = " << format_double(cfg.snr_stop_db) << "\n";
    out << "snr_step_db = " << format_double(cfg.snr_step_db) << "\n";
    out << "snr_axis = " << cfg.snr_axis << "\n";
    if (!cfg.method.empty()) out << "method = " << cfg.method << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "batch = " << cfg.batch << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "bins = " << cfg.bins << "\n";
    out << "groups = " << cfg.groups << "\n";
    out << "candidates = " << cfg.candidates << "\n";
    out << "f_c_ghz = " << format_double(cfg.f_c_ghz) << "\n";
    out << "d_tx = " << format_double(cfg.d_tx) << "\n";
    out << "d_ty = " << format_double(cfg.d_ty) << "\n";
    out << "d_rx = " << format_double(cfg.d_rx) << "\n";
    out << "d_ry = " << format_double(cfg.d_ry) << "\n";
    out << "g_t = " << format_double(cfg.g_t) << "\n";
    out << "g_r = " << format_double(cfg.g_r) << "\n";
    out << "d_m = " << format_double(cfg.d_m) << "\n";
    out << "d_n = " << format_double(cfg.d_n) << "\n";
    out << "wavelength_m = " << format_double(cfg.wavelength_m) << "\n";
    out << "out = " << cfg.out << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand runners
// ---------------------------------------------------------------------------

inline double resolved_beta_max(const ExperimentConfig& cfg,
                                const model::RisConfig& config) {
    const auto law = cfg.law();
    double beta_max = 0.0;
    for (double phi : config.phases)
        beta_max = std::max(beta_max, model::amplitude(law, phi));
    return beta_max;
}

inline perf::SnrSweep make_sweep(const ExperimentConfig& cfg,
                                 const model::RisConfig& config) {
    auto sweep = perf::SnrSweep::make(cfg.snr_start_db, cfg.snr_stop_db,
                                      cfg.snr_step_db, cfg.ostbc(),
                                      static_cast<int>(cfg.mod_order));
    if (cfg.snr_axis == "transmit") {
        const double pl =
            model::path_loss(cfg.geometry(), resolved_beta_max(cfg, config));
        sweep.scale_gamma(pl);
    }
    return sweep;
}

inline void run_pdf(const ExperimentConfig& cfg) {
    const auto config = resolve_phases(cfg);
    const auto profile = model::reflection_gains(config, cfg.law());
    const auto methods = cfg.methods();

    bool want_exact = false, want_lclt = false, want_spa = false,
         want_empirical = false;
    for (const auto& m : methods) {
        if (m == "exact") want_exact = true;
        else if (m == "lclt") want_lclt = true;
        else if (m == "spa") want_spa = true;
        else if (m == "empirical") want_empirical = true;
        else throw ConfigError("method", "unknown pdf method '" + m + "'");
    }
    if (methods.empty()) throw ConfigError("method", "no pdf methods selected");

    std::vector<std::string> columns{"y"};
    if (want_exact) columns.push_back("exact");
    if (want_lclt) columns.push_back("lclt");
    if (want_spa) columns.push_back("spa");
    if (want_empirical) columns.push_back("empirical");

    const int bins = static_cast<int>(cfg.bins);
    mc::EmpiricalPdf hist;
    if (want_empirical)
        hist = mc::empirical_lambda_pdf(cfg.run_spec(), profile, bins);

    std::optional<eig::SpaDensity> spa;
    if (want_spa) spa.emplace(profile);

    const double hi = profile.mu + 8.0 * profile.sigma();
    const double width = hi / bins;
    CsvWriter csv(cfg.out, columns);
    for (int i = 0; i < bins; ++i) {
        const double y = (i + 0.5) * width;
        std::vector<double> row{y};
        if (want_exact) {
            if (profile.classification == model::GainClass::Identical)
                row.push_back(eig::erlang_lambda_pdf(
                    y, static_cast<int>(profile.size()), profile.gains[0]));
            else
                row.push_back(eig::hypoexp_lambda_pdf(y, profile));
        }
        if (want_lclt) row.push_back(eig::lclt_lambda_pdf(y, profile));
        if (want_spa) row.push_back(spa->normalized_pdf(y));
        if (want_empirical) row.push_back(hist.density[i]);
        csv.row(row);
    }
    write_manifest(cfg);
}

inline void run_ser(const ExperimentConfig& cfg) {
    const auto config = resolve_phases(cfg);
    const auto profile = model::reflection_gains(config, cfg.law());
    const auto sweep = make_sweep(cfg, config);
    const auto methods = cfg.methods();
    bool want_exact = false, want_spa = false;
    for (const auto& m : methods) {
        if (m == "exact") want_exact = true;
        else if (m == "spa") want_spa = true;
        else throw ConfigError("method", "unknown ser method '" + m + "'");
    }
    if (methods.empty()) throw ConfigError("method", "no ser methods selected");

    std::vector<std::string> columns{"snr_db"};
    if (want_exact) columns.push_back("ser_exact");
    if (want_spa) columns.push_back("ser_spa");

    perf::SerCurve exact, spa;
    if (want_exact) exact = perf::ser_curve_exact(profile, sweep);
    if (want_spa) spa = perf::ser_curve_spa(profile, sweep);

    CsvWriter csv(cfg.out, columns);
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        std::vector<double> row{sweep.snr_db[i]};
        if (want_exact) row.push_back(exact.points[i].ser);
        if (want_spa) row.push_back(spa.points[i].ser);
        csv.row(row);
    }
    write_manifest(cfg);
}

inline void run_asym(const ExperimentConfig& cfg) {
    const auto config = resolve_phases(cfg);
    const auto profile = model::reflection_gains(config, cfg.law());
    const auto sweep = make_sweep(cfg, config);
    const auto curve = perf::ser_curve_asymptotic(profile, sweep);
    const auto gains =
        perf::diversity_coding_gain(profile, sweep.scheme, sweep.mod_order);

    CsvWriter csv(cfg.out, {"snr_db", "ser_asym", "gd", "gc"});
    for (const auto& p : curve.points)
        csv.row({p.snr_db, p.ser, gains.gd, gains.gc});
    write_manifest(cfg);
}

inline void run_mc(const ExperimentConfig& cfg) {
    const auto config = resolve_phases(cfg);
    const auto profile = model::reflection_gains(config, cfg.law());
    const auto sweep = make_sweep(cfg, config);

    CsvWriter csv(cfg.out, {"snr_db", "ser", "std_error"});
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        const auto est =
            mc::ser_semi_analytic(cfg.run_spec(), profile, sweep.scheme,
                                  sweep.mod_order, sweep.gamma_bar[i]);
        csv.row({sweep.snr_db[i], est.value, est.std_error});
    }
    write_manifest(cfg);
}

inline void run_optimize(const ExperimentConfig& cfg) {
    const auto cb = model::codebook(static_cast<int>(cfg.codebook_bits));
    const auto res = opt::optimize(
        static_cast<int>(cfg.n_ris), cfg.ostbc().nt,
        static_cast<int>(cfg.groups), static_cast<int>(cfg.candidates), cb,
        cfg.law(), cfg.seed);

    CsvWriter csv(cfg.out, {"step", "objective"});
    for (std::size_t i = 0; i < res.trace.size(); ++i)
        csv.row({static_cast<double>(i), res.trace[i]});

    std::ofstream phases(cfg.out + ".phases");
    if (!phases)
        throw ConfigError("out", "cannot open '" + cfg.out + ".phases'");
    for (double p : res.config.phases) phases << format_double(p) << "\n";

    write_manifest(cfg,
                   {"achieved ratio r = " + format_double(res.ratio),
                    "wall_seconds = " + format_double(res.wall_seconds)});
    std::cerr << "optimize: final objective " << format_double(res.trace.back())
              << ", r = " << format_double(res.ratio) << "\n";
}

inline void run_pathloss(const ExperimentConfig& cfg) {
    const auto geom = cfg.geometry();
    const auto config = resolve_phases(cfg);
    const double beta_max = resolved_beta_max(cfg, config);
    const double pl = model::path_loss(geom, beta_max);
    const double d_nf = model::fraunhofer_distance(geom);

    CsvWriter csv(cfg.out, {"f_c_ghz", "wavelength_m", "d_t_m", "d_r_m",
                            "d_nf_m", "beta_max", "p_l", "p_l_db"});
    csv.row({cfg.f_c_ghz, geom.wavelength(), geom.d_t(), geom.d_r(), d_nf,
             beta_max, pl, 10.0 * std::log10(pl)});
    write_manifest(cfg);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Run one subcommand against a config file plus key=value overrides.
/// Exit codes: 0 success, 1 config error, 2 numerical failure.
inline int run(const std::string& subcommand, const std::string& config_path,
               const std::vector<std::string>& overrides = {}) {
    try {
        auto kv = KeyValueConfig::from_file(config_path);
        for (const auto& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw ConfigError("override", "'" + ov + "' is not key=value");
            kv.override_entry(detail::trim(ov.substr(0, eq)),
                              detail::trim(ov.substr(eq + 1)));
        }

        if (subcommand != "pdf" && subcommand != "ser" && subcommand != "asym" &&
            subcommand != "mc" && subcommand != "optimize" &&
            subcommand != "pathloss")
            throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");

        const auto cfg = resolve(subcommand, kv);
        if (subcommand == "pdf") detail::run_pdf(cfg);
        else if (subcommand == "ser") detail::run_ser(cfg);
        else if (subcommand == "asym") detail::run_asym(cfg);
        else if (subcommand == "mc") detail::run_mc(cfg);
        else if (subcommand == "optimize") detail::run_optimize(cfg);
        else detail::run_pathloss(cfg);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace risser::cli
