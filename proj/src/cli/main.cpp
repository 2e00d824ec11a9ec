// Command-line front door: parses a JSON request, dispatches to the
// library, and writes deterministic JSON or CSV reports.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fhardy/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadJson = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNoConverge = 4;

struct RunRequest {
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    int threads = 1;
    long seed = -1;
    bool has_seed = false;
    std::vector<std::string> report_inputs;
};

fhardy::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    return fhardy::json::parse(in);  // throws json::parse_error on bad syntax
}

void write_output(const RunRequest& req, const std::string& text) {
    if (req.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(req.out_path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + req.out_path);
    out << text;
}

fhardy::json header(const RunRequest& req) {
    fhardy::json doc;
    doc["schema"] = 1;
    doc["command"] = req.command;
    if (req.has_seed)
        doc["seed"] = req.seed;
    return doc;
}

std::string csv_cell(const fhardy::json& v) {
    if (v.is_number_float()) return fhardy::format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// Renders {"columns":[...], "rows":[[...],...]} as CSV text.
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<fhardy::json>>& rows) {
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c)
        text += (c ? "," : "") + columns[c];
    text += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            text += (c ? "," : "") + csv_cell(row[c]);
        text += "\n";
    }
    return text;
}

const fhardy::json& section(const fhardy::json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_object())
        throw std::invalid_argument(std::string("request needs a \"") + key +
                                    "\" object");
    return *it;
}

double number_or(const fhardy::json& doc, const char* key, double fallback) {
    const auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    if (!it->is_number())
        throw std::invalid_argument(std::string(key) + " must be a number");
    return it->get<double>();
}

struct SolverParams {
    double L = 20.0;
    double h = 0.05;
    double offset = -1.0;  // negative -> grid default h/2
    int iters = -1;        // negative -> per-objective default
    double tol = 1e-10;
    std::string objective = "mu";
    std::string iterate_csv;
};

SolverParams solver_params(const fhardy::json& doc) {
    SolverParams p;
    const auto it = doc.find("solver");
    if (it == doc.end()) return p;
    if (!it->is_object())
        throw std::invalid_argument("\"solver\" must be an object");
    p.L = number_or(*it, "L", p.L);
    p.h = number_or(*it, "h", p.h);
    p.offset = number_or(*it, "offset", p.offset);
    p.iters = static_cast<int>(number_or(*it, "iters", -1.0));
    p.tol = number_or(*it, "tol", p.tol);
    if (it->contains("objective")) p.objective = (*it)["objective"].get<std::string>();
    if (p.objective != "mu" && p.objective != "S")
        throw std::invalid_argument("solver objective must be \"mu\" or \"S\"");
    if (it->contains("iterate_csv")) p.iterate_csv = (*it)["iterate_csv"].get<std::string>();
    return p;
}

std::vector<double> number_list(const fhardy::json& arr, const char* what) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument(std::string(what) + " must be a non-empty array");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number())
            throw std::invalid_argument(std::string(what) + " must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> default_mus() {
    std::vector<double> mus;
    for (int i = 0; i < 8; ++i)
        mus.push_back(1e-3 * std::pow(100.0, i / 7.0));
    return mus;
}

// ---------------------------------------------------------------- spectral

int run_spectral(const RunRequest& req, const fhardy::json& cfg) {
    fhardy::ProblemParams params{};
    params.N = cfg.at("N").get<int>();
    params.s = cfg.at("s").get<double>();
    fhardy::validate(params);
    const double h = fhardy::hardy_constant(params);

    std::vector<double> lambdas;
    if (cfg.contains("spectral") && cfg["spectral"].contains("lambdas")) {
        lambdas = number_list(cfg["spectral"]["lambdas"], "spectral.lambdas");
    } else if (cfg.contains("masses") && !cfg["masses"].empty()) {
        lambdas = number_list(cfg["masses"], "masses");
    } else {
        for (int j = 1; j <= 9; ++j) lambdas.push_back(h * j / 10.0);
    }

    fhardy::json table = fhardy::json::array();
    std::vector<std::vector<fhardy::json>> rows;
    for (double lam : lambdas) {
        fhardy::json entry;
        entry["lambda"] = lam;
        if (lam >= 0.0 && lam <= h) {
            const double alpha = fhardy::alpha_of_lambda(lam, params);
            entry["alpha"] = alpha;
            rows.push_back({fhardy::json(lam), fhardy::json(alpha)});
        } else {
            entry["alpha"] = nullptr;
            rows.push_back({fhardy::json(lam), fhardy::json()});
        }
        table.push_back(entry);
    }

    if (req.format == "csv") {
        write_output(req, to_csv({"lambda", "alpha"}, rows));
        return kExitOk;
    }
    fhardy::json doc = header(req);
    doc["N"] = params.N;
    doc["s"] = params.s;
    doc["hardy_constant"] = h;
    doc["kappa"] = fhardy::kappa(params.s);
    doc["critical_exponent"] = fhardy::critical_exponent(params);
    doc["form_constant"] = fhardy::form_constant(params);
    doc["alpha_table"] = table;
    write_output(req, fhardy::dump_deterministic(doc));
    return kExitOk;
}

// ---------------------------------------------------------------- classify

int run_classify(const RunRequest& req, const fhardy::json& cfg) {
    const fhardy::Configuration config =
        fhardy::validate(fhardy::config_from_json(cfg));
    const fhardy::Verdict verdict = fhardy::classify(config);

    if (req.format == "csv") {
        std::vector<std::vector<fhardy::json>> rows;
        rows.push_back({fhardy::json("outcome"), fhardy::json(to_string(verdict.outcome))});
        for (const auto& rule : verdict.rules)
            rows.push_back({fhardy::json("rule." + rule.id + ".fired"),
                            fhardy::json(rule.fired ? "true" : "false")});
        write_output(req, to_csv({"field", "value"}, rows));
        return kExitOk;
    }
    fhardy::json doc = header(req);
    doc["configuration"] = to_json(config);
    doc["verdict"] = to_json(verdict);
    write_output(req, fhardy::dump_deterministic(doc));
    return kExitOk;
}

// ------------------------------------------------------------- asymptotics

int run_asymptotics(const RunRequest& req, const fhardy::json& cfg) {
    fhardy::ProblemParams params{};
    params.N = cfg.at("N").get<int>();
    params.s = cfg.at("s").get<double>();
    fhardy::validate(params);
    const fhardy::json& sec = section(cfg, "asymptotics");

    std::vector<double> lambdas;
    if (sec.contains("lambdas")) {
        lambdas = number_list(sec["lambdas"], "asymptotics.lambdas");
    } else if (sec.contains("alphas")) {
        for (double a : number_list(sec["alphas"], "asymptotics.alphas"))
            lambdas.push_back(fhardy::lambda_of_alpha(a, params));
    } else {
        throw std::invalid_argument("asymptotics needs \"lambdas\" or \"alphas\"");
    }
    const double xi_norm = number_or(sec, "xi_norm", 1.0);
    std::vector<double> mus = sec.contains("mus")
        ? number_list(sec["mus"], "asymptotics.mus") : default_mus();

    fhardy::json fits = fhardy::json::array();
    std::vector<std::vector<fhardy::json>> rows;
    for (double lam : lambdas) {
        const fhardy::RadialProfile profile = fhardy::make_profile(params, lam);
        const fhardy::RateFit fit = fhardy::rate_sweep(profile, xi_norm, mus);
        fhardy::json entry;
        entry["lambda"] = lam;
        const fhardy::json fit_doc = to_json(fit);
        for (const auto& [key, value] : fit_doc.items())
            entry[key] = value;
        fits.push_back(entry);
        rows.push_back({fhardy::json(lam), fhardy::json(fit.slope),
                        fhardy::json(fit.constant), fhardy::json(fit.r_squared),
                        fhardy::json(fit.log_corrected ? "true" : "false"),
                        fhardy::json(fit.window.first), fhardy::json(fit.window.second),
                        fhardy::json(fit.n_points)});
    }

    if (req.format == "csv") {
        write_output(req, to_csv({"lambda", "slope", "constant", "r_squared",
                                  "log_corrected", "window_lo", "window_hi",
                                  "n_points"},
                                 rows));
        return kExitOk;
    }
    fhardy::json doc = header(req);
    doc["N"] = params.N;
    doc["s"] = params.s;
    doc["xi_norm"] = xi_norm;
    doc["mus"] = mus;
    doc["fits"] = fits;
    write_output(req, fhardy::dump_deterministic(doc));
    return kExitOk;
}

// ---------------------------------------------------------------- minimize

int run_minimize(const RunRequest& req, const fhardy::json& cfg) {
    const fhardy::Configuration config =
        fhardy::validate(fhardy::config_from_json(cfg));
    const SolverParams sp = solver_params(cfg);
    const fhardy::Grid1D grid =
        fhardy::Grid1D::make(sp.L, sp.h, config.params.s, sp.offset);

    fhardy::DescentResult result;
    if (sp.objective == "mu") {
        const int iters = sp.iters > 0 ? sp.iters : 2000;
        result = fhardy::estimate_mu(config, grid, iters, sp.tol, req.threads);
    } else {
        const int iters = sp.iters > 0 ? sp.iters : 3000;
        result = fhardy::estimate_S(config, grid, iters, sp.tol, req.threads);
    }
    const fhardy::QuadraticFormReport at_final = fhardy::q_form(result.minimizer, config);

    if (!sp.iterate_csv.empty()) {
        std::vector<std::vector<fhardy::json>> rows;
        for (std::size_t i = 0; i < grid.n(); ++i)
            rows.push_back({fhardy::json(grid.x[i]),
                            fhardy::json(result.minimizer.values[i])});
        std::ofstream out(sp.iterate_csv, std::ios::binary);
        if (!out)
            throw std::invalid_argument("cannot open output file: " + sp.iterate_csv);
        out << to_csv({"x", "u"}, rows);
    }

    if (req.format == "csv") {
        std::vector<std::vector<fhardy::json>> rows;
        for (std::size_t i = 0; i < result.history.size(); ++i)
            rows.push_back({fhardy::json(i), fhardy::json(result.history[i])});
        write_output(req, to_csv({"iter", "quotient"}, rows));
    } else {
        fhardy::json doc = header(req);
        doc["objective"] = sp.objective;
        fhardy::json grid_doc;
        grid_doc["L"] = grid.L;
        grid_doc["h"] = grid.h;
        grid_doc["offset"] = grid.offset;
        grid_doc["n"] = static_cast<long>(grid.n());
        doc["grid"] = grid_doc;
        doc["configuration"] = to_json(config);
        doc["descent"] = to_json(result);
        doc["report"] = to_json(at_final);
        write_output(req, fhardy::dump_deterministic(doc));
    }
    return result.converged ? kExitOk : kExitNoConverge;
}

// ------------------------------------------------------------------- sweep

int run_sweep(const RunRequest& req, const fhardy::json& cfg) {
    const fhardy::Configuration config =
        fhardy::validate(fhardy::config_from_json(cfg));
    const fhardy::json& sec = section(cfg, "sweep");
    const std::string vary = sec.at("vary").get<std::string>();

    if (vary == "mu") {
        const std::size_t index = sec.contains("index")
            ? sec["index"].get<std::size_t>() : config.masses.size() - 1;
        if (index >= config.masses.size())
            throw std::invalid_argument("sweep index out of range");
        std::vector<double> mus = sec.contains("values")
            ? number_list(sec["values"], "sweep.values") : default_mus();

        const SolverParams sp = solver_params(cfg);
        const fhardy::Grid1D grid =
            fhardy::Grid1D::make(sp.L, sp.h, config.params.s, sp.offset);
        fhardy::Configuration single;
        single.params = config.params;
        single.masses = {config.masses[index]};
        single.poles = {config.poles[index]};
        const int iters = sp.iters > 0 ? sp.iters : 3000;
        const fhardy::DescentResult base =
            fhardy::estimate_S(single, grid, iters, sp.tol, req.threads);
        const std::vector<double> bound =
            fhardy::interaction_upper_bound(config, index, mus, base.value);

        if (req.format == "csv") {
            std::vector<std::vector<fhardy::json>> rows;
            for (std::size_t i = 0; i < mus.size(); ++i)
                rows.push_back({fhardy::json(mus[i]), fhardy::json(bound[i]),
                                fhardy::json(base.value)});
            write_output(req, to_csv({"mu", "upper_bound", "s_single"}, rows));
        } else {
            fhardy::json doc = header(req);
            doc["vary"] = vary;
            doc["index"] = static_cast<long>(index);
            doc["s_single"] = base.value;
            fhardy::json rows = fhardy::json::array();
            for (std::size_t i = 0; i < mus.size(); ++i) {
                fhardy::json row;
                row["mu"] = mus[i];
                row["upper_bound"] = bound[i];
                rows.push_back(row);
            }
            doc["rows"] = rows;
            write_output(req, fhardy::dump_deterministic(doc));
        }
        return base.converged ? kExitOk : kExitNoConverge;
    }

    if (vary != "mass" && vary != "pole")
        throw std::invalid_argument("sweep vary must be \"mass\", \"pole\" or \"mu\"");
    const std::size_t index = sec.at("index").get<std::size_t>();
    const std::size_t coord = sec.contains("coordinate")
        ? sec["coordinate"].get<std::size_t>() : 0;
    const std::vector<double> values = number_list(sec.at("values"), "sweep.values");
    if (index >= config.masses.size())
        throw std::invalid_argument("sweep index out of range");
    if (vary == "pole" && coord >= config.poles[index].size())
        throw std::invalid_argument("sweep coordinate out of range");

    fhardy::json out_rows = fhardy::json::array();
    std::vector<std::vector<fhardy::json>> rows;
    for (double v : values) {
        fhardy::Configuration probe = config;
        if (vary == "mass")
            probe.masses[index] = v;
        else
            probe.poles[index][coord] = v;
        const fhardy::Verdict verdict = fhardy::classify(probe);
        const std::string outcome = to_string(verdict.outcome);
        fhardy::json row;
        row["value"] = v;
        row["outcome"] = outcome;
        out_rows.push_back(row);
        rows.push_back({fhardy::json(v), fhardy::json(outcome)});
    }

    if (req.format == "csv") {
        write_output(req, to_csv({"value", "outcome"}, rows));
    } else {
        fhardy::json doc = header(req);
        doc["vary"] = vary;
        doc["index"] = static_cast<long>(index);
        if (vary == "pole") doc["coordinate"] = static_cast<long>(coord);
        doc["rows"] = out_rows;
        write_output(req, fhardy::dump_deterministic(doc));
    }
    return kExitOk;
}

// ------------------------------------------------------------------ report

int run_report(const RunRequest& req, const fhardy::json* cfg) {
    std::vector<std::string> inputs = req.report_inputs;
    if (cfg && cfg->contains("report") && (*cfg)["report"].contains("inputs"))
        for (const auto& p : (*cfg)["report"]["inputs"])
            inputs.push_back(p.get<std::string>());
    if (inputs.empty())
        throw std::invalid_argument("report needs at least one input document");
    if (req.format == "csv")
        throw std::invalid_argument("report emits JSON only");

    fhardy::json docs = fhardy::json::array();
    for (const auto& path : inputs) {
        fhardy::json entry;
        entry["source"] = path;
        entry["document"] = load_json_file(path);
        docs.push_back(entry);
    }
    fhardy::json doc = header(req);
    doc["documents"] = docs;
    write_output(req, fhardy::dump_deterministic(doc));
    return kExitOk;
}

int dispatch(RunRequest& req) {
    const char* env_threads = std::getenv("FHARDY_THREADS");
    if (env_threads && *env_threads) {
        try {
            req.threads = std::stoi(env_threads);
        } catch (const std::exception&) {
            throw std::invalid_argument("FHARDY_THREADS must be an integer");
        }
    }
    if (req.threads < 1)
        throw std::invalid_argument("thread count must be >= 1");

    std::optional<fhardy::json> cfg;
    if (!req.config_path.empty())
        cfg = load_json_file(req.config_path);
    if (req.command == "report")
        return run_report(req, cfg ? &*cfg : nullptr);
    if (!cfg)
        throw std::invalid_argument(req.command + " requires --config");
    if (cfg->contains("schema") && (*cfg)["schema"] != 1)
        throw std::invalid_argument("unsupported schema version");

    if (req.command == "spectral") return run_spectral(req, *cfg);
    if (req.command == "classify") return run_classify(req, *cfg);
    if (req.command == "asymptotics") return run_asymptotics(req, *cfg);
    if (req.command == "minimize") return run_minimize(req, *cfg);
    if (req.command == "sweep") return run_sweep(req, *cfg);
    throw std::invalid_argument("unknown command: " + req.command);
}

}  // namespace

int main(int argc, char** argv) {
    RunRequest req;
    CLI::App app{"Numerical toolkit for fractional Hardy quadratic forms"};
    app.fallthrough(true);
    app.require_subcommand(1);
    app.add_option("--config", req.config_path, "JSON request file");
    app.add_option("--out", req.out_path, "output path (default: stdout)");
    app.add_option("--format", req.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", req.threads, "worker threads for form assembly");
    auto* seed_opt = app.add_option("--seed", req.seed, "seed for randomized suites");

    for (const char* name : {"spectral", "classify", "asymptotics",
                             "minimize", "sweep", "report"}) {
        auto* sub = app.add_subcommand(name);
        if (std::string(name) == "report")
            sub->add_option("inputs", req.report_inputs, "prior JSON outputs");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    req.has_seed = seed_opt->count() > 0;
    req.command = app.get_subcommands().front()->get_name();

    try {
        return dispatch(req);
    } catch (const fhardy::json::parse_error& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitBadJson;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
