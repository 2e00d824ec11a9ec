#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fhardy/report.hpp"

using namespace fhardy;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

/// Runs the installed binary through the shell, capturing stdout.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(FHARDY_CLI_PATH) + " " + args +
                            " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "fhardy_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_text(const std::string& name, const std::string& text) {
    const auto path = work_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path.string();
}

std::string write_json(const std::string& name, const json& doc) {
    return write_text(name, doc.dump(2));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

json config_doc(int N, double s, const std::vector<double>& masses,
                const std::vector<std::vector<double>>& poles) {
    json doc;
    doc["schema"] = 1;
    doc["N"] = N;
    doc["s"] = s;
    doc["masses"] = masses;
    doc["poles"] = poles;
    return doc;
}

std::string three_pole_path() {
    const double h = hardy_constant(ProblemParams{3, 0.5});
    // deliberately unsorted so the emitted configuration shows normalization
    return write_json("three_pole.json",
                      config_doc(3, 0.5, {0.3 * h, -0.3 * h, 0.3 * h},
                                 {{1, 0, 0}, {2, 0, 0}, {0, 0, 0}}));
}

std::string minimize_path(int iters) {
    json doc = config_doc(1, 0.25, {0.01}, {{0.3}});
    doc["solver"] = {{"L", 5.0}, {"h", 0.1}, {"objective", "mu"}};
    if (iters > 0) doc["solver"]["iters"] = iters;
    return write_json("minimize_" + std::to_string(iters) + ".json", doc);
}

}  // namespace

TEST_CASE("spectral emits the inversion table") {
    const std::string cfg = write_json("spectral.json", config_doc(3, 0.5, {}, {}));
    // an empty masses array falls back to the nine-point default table
    json base = json::parse(R"({"schema":1,"N":3,"s":0.5})");
    const std::string cfg2 = write_json("spectral_bare.json", base);

    const RunResult res = run_cli("spectral --config " + cfg2);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("command") == "spectral");
    CHECK_FALSE(doc.contains("seed"));
    CHECK(doc.at("N") == 3);
    CHECK(doc.at("hardy_constant").get<double>() ==
          doctest::Approx(2.0 / 3.14159265358979324).epsilon(1e-12));
    CHECK(doc.at("kappa").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    const json& table = doc.at("alpha_table");
    REQUIRE(table.size() == 9);
    CHECK(table[4].at("alpha").get<double>() ==
          doctest::Approx(0.7420192964071032).epsilon(1e-9));
}

TEST_CASE("spectral marks out-of-range values as null") {
    json base = json::parse(R"({"schema":1,"N":3,"s":0.5})");
    base["spectral"]["lambdas"] = {-0.5, 0.0, 5.0};
    const std::string cfg = write_json("spectral_range.json", base);

    const RunResult res = run_cli("spectral --config " + cfg);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    const json& table = doc.at("alpha_table");
    REQUIRE(table.size() == 3);
    CHECK(table[0].at("alpha").is_null());
    CHECK(table[1].at("alpha").get<double>() == 1.0);
    CHECK(table[2].at("alpha").is_null());

    const RunResult csv = run_cli("spectral --config " + cfg + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("lambda,alpha\n", 0) == 0);
    CHECK(csv.output.find("null") != std::string::npos);
    CHECK(count_lines(csv.output) == 4);
}

TEST_CASE("classify emits verdict and normalized configuration") {
    const RunResult res = run_cli("classify --config " + three_pole_path());
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("verdict").at("outcome") == "ExistsMinimizer");

    const json& masses = doc.at("configuration").at("masses");
    REQUIRE(masses.size() == 3);
    CHECK(masses[0].get<double>() <= masses[1].get<double>());
    CHECK(masses[1].get<double>() <= masses[2].get<double>());

    bool existence_fired = false;
    for (const auto& rule : doc.at("verdict").at("rules"))
        if (rule.at("id") == "existence-dominant-pole")
            existence_fired = rule.at("fired").get<bool>();
    CHECK(existence_fired);
}

TEST_CASE("classify round trip reproduces itself") {
    const RunResult first = run_cli("classify --config " + three_pole_path());
    REQUIRE(first.exit_code == 0);
    const json doc = json::parse(first.output);

    const std::string cfg2 = write_json("round_trip.json", doc.at("configuration"));
    const RunResult second = run_cli("classify --config " + cfg2);
    REQUIRE(second.exit_code == 0);
    const json doc2 = json::parse(second.output);
    CHECK(doc2.at("verdict").at("outcome") == doc.at("verdict").at("outcome"));
    CHECK(doc2.at("configuration") == doc.at("configuration"));
}

TEST_CASE("repeated runs are byte identical") {
    const std::string cfg = three_pole_path();
    const std::string out1 = (work_dir() / "rep1.json").string();
    const std::string out2 = (work_dir() / "rep2.json").string();
    REQUIRE(run_cli("classify --config " + cfg + " --out " + out1).exit_code == 0);
    REQUIRE(run_cli("classify --config " + cfg + " --out " + out2).exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));

    const std::string mcfg = minimize_path(-1);
    const std::string out3 = (work_dir() / "rep3.json").string();
    const std::string out4 = (work_dir() / "rep4.json").string();
    REQUIRE(run_cli("minimize --config " + mcfg + " --threads 1 --out " + out3)
                .exit_code == 0);
    REQUIRE(run_cli("minimize --config " + mcfg + " --threads 1 --out " + out4)
                .exit_code == 0);
    CHECK(slurp(out3) == slurp(out4));
}

TEST_CASE("classify csv lists outcome then rule flags") {
    const RunResult res =
        run_cli("classify --config " + three_pole_path() + " --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("field,value\noutcome,ExistsMinimizer\n", 0) == 0);
    CHECK(res.output.find("rule.existence-dominant-pole.fired,true") !=
          std::string::npos);
}

TEST_CASE("malformed request files exit with the parse code") {
    const std::string cfg = write_text("broken.json", "{nope");
    CHECK(run_cli("classify --config " + cfg).exit_code == 2);
}

TEST_CASE("invalid requests exit with the validation code") {
    const double h = hardy_constant(ProblemParams{3, 0.5});
    const std::string dup = write_json(
        "dup_poles.json",
        config_doc(3, 0.5, {0.1, 0.2}, {{0, 0, 0}, {0, 0, 0}}));
    CHECK(run_cli("classify --config " + dup).exit_code == 3);

    json wrong_schema = config_doc(3, 0.5, {0.3 * h}, {{0, 0, 0}});
    wrong_schema["schema"] = 2;
    const std::string schema_path = write_json("schema2.json", wrong_schema);
    CHECK(run_cli("classify --config " + schema_path).exit_code == 3);

    const std::string bad_s =
        write_json("bad_s.json", config_doc(1, 0.9, {0.1}, {{0.0}}));
    CHECK(run_cli("classify --config " + bad_s).exit_code == 3);

    CHECK(run_cli("spectral").exit_code == 3);

    json bad_sweep = config_doc(3, 0.5, {0.1, 0.2}, {{0, 0, 0}, {1, 0, 0}});
    bad_sweep["sweep"] = {{"vary", "bogus"}, {"index", 0}, {"values", {0.1}}};
    const std::string sweep_path = write_json("bad_sweep.json", bad_sweep);
    CHECK(run_cli("sweep --config " + sweep_path).exit_code == 3);

    json no_section;
    no_section["schema"] = 1;
    no_section["N"] = 3;
    no_section["s"] = 0.5;
    const std::string asym_path = write_json("no_asym.json", no_section);
    CHECK(run_cli("asymptotics --config " + asym_path).exit_code == 3);
}

TEST_CASE("minimize reports non-convergence but still writes output") {
    const std::string cfg = minimize_path(5);
    const std::string out = (work_dir() / "short_run.json").string();
    const RunResult res = run_cli("minimize --config " + cfg + " --out " + out);
    CHECK(res.exit_code == 4);
    const json doc = json::parse(slurp(out));
    CHECK(doc.at("descent").at("converged") == false);
    CHECK(doc.at("descent").at("iterations") == 5);
}

TEST_CASE("minimize converges and can dump the minimizer") {
    json cfg_doc = config_doc(1, 0.25, {0.01}, {{0.3}});
    const std::string iterate = (work_dir() / "minimizer.csv").string();
    cfg_doc["solver"] = {{"L", 5.0}, {"h", 0.1}, {"iterate_csv", iterate}};
    const std::string cfg = write_json("minimize_dump.json", cfg_doc);

    const RunResult res = run_cli("minimize --config " + cfg);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("objective") == "mu");
    CHECK(doc.at("grid").at("n") == 100);
    CHECK(doc.at("descent").at("converged") == true);
    const double value = doc.at("descent").at("value").get<double>();
    const double quotient = doc.at("report").at("mu_quotient").get<double>();
    CHECK(quotient == doctest::Approx(value).epsilon(1e-9));

    const std::string table = slurp(iterate);
    CHECK(table.rfind("x,u\n", 0) == 0);
    CHECK(count_lines(table) == 101);
}

TEST_CASE("minimize csv is the quotient history") {
    const RunResult res =
        run_cli("minimize --config " + minimize_path(-1) + " --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("iter,quotient\n0,", 0) == 0);
    CHECK(count_lines(res.output) >= 3);
}

TEST_CASE("asymptotics fits the interaction decay law") {
    json cfg_doc;
    cfg_doc["schema"] = 1;
    cfg_doc["N"] = 3;
    cfg_doc["s"] = 0.5;
    cfg_doc["asymptotics"] = {{"alphas", {0.9}}};
    const std::string cfg = write_json("asymptotics.json", cfg_doc);

    const RunResult res = run_cli("asymptotics --config " + cfg);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("command") == "asymptotics");
    CHECK(doc.at("xi_norm") == doctest::Approx(1.0));
    CHECK(doc.at("mus").size() == 8);
    const json& fits = doc.at("fits");
    REQUIRE(fits.size() == 1);
    const json& fit = fits[0];
    CHECK(fit.at("lambda").get<double>() ==
          doctest::Approx(lambda_of_alpha(0.9, ProblemParams{3, 0.5}))
              .epsilon(1e-12));
    CHECK(fit.at("slope").get<double>() ==
          doctest::Approx(0.97778169).epsilon(1e-3));
    CHECK(fit.at("log_corrected") == json(false));
    CHECK(fit.at("n_points") == json(8));
    CHECK(fit.at("window")[0].get<double>() == doctest::Approx(1e-3));
    CHECK(fit.at("window")[1].get<double>() == doctest::Approx(1e-1));

    const RunResult csv = run_cli("asymptotics --config " + cfg + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("lambda,slope,constant,r_squared,log_corrected,"
                           "window_lo,window_hi,n_points\n",
                           0) == 0);
    CHECK(csv.output.find("false") != std::string::npos);
}

TEST_CASE("sweep over a mass classifies every probe") {
    const double h = hardy_constant(ProblemParams{3, 0.5});
    json cfg_doc = config_doc(3, 0.5, {0.3 * h, 0.5 * h}, {{0, 0, 0}, {1, 0, 0}});
    cfg_doc["sweep"] = {{"vary", "mass"},
                        {"index", 1},
                        {"values", {-0.2 * h, 0.3 * h, 0.8 * h}}};
    const std::string cfg = write_json("sweep_mass.json", cfg_doc);

    const RunResult res = run_cli("sweep --config " + cfg);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("vary") == "mass");
    const json& rows = doc.at("rows");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].at("outcome") == "NotAchieved");
    CHECK(rows[1].at("outcome") == "NotAchieved");
    CHECK(rows[2].at("outcome") == "NoSolutions");

    const RunResult csv = run_cli("sweep --config " + cfg + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("value,outcome\n", 0) == 0);
    CHECK(csv.output.find("NoSolutions") != std::string::npos);
}

TEST_CASE("sweep over the profile scale bounds the quotient") {
    const double h = hardy_constant(ProblemParams{1, 0.25});
    json cfg_doc = config_doc(1, 0.25, {0.5 * h, 0.05 * h}, {{0.0}, {1.0}});
    cfg_doc["solver"] = {{"L", 5.0}, {"h", 0.1}};
    cfg_doc["sweep"] = {{"vary", "mu"}, {"values", {1e-3, 0.1}}};
    const std::string cfg = write_json("sweep_mu.json", cfg_doc);

    const RunResult res = run_cli("sweep --config " + cfg);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    const double s_single = doc.at("s_single").get<double>();
    CHECK(s_single > 0.0);
    const json& rows = doc.at("rows");
    REQUIRE(rows.size() == 2);
    const double b0 = rows[0].at("upper_bound").get<double>();
    const double b1 = rows[1].at("upper_bound").get<double>();
    CHECK(rows[0].at("mu").get<double>() == 1e-3);
    CHECK(b0 < s_single);
    CHECK(b1 < b0);

    const RunResult csv = run_cli("sweep --config " + cfg + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("mu,upper_bound,s_single\n", 0) == 0);
}

TEST_CASE("report bundles prior documents") {
    const std::string a = write_json("doc_a.json", json::parse(R"({"x":1})"));
    const std::string b = write_json("doc_b.json", json::parse(R"({"y":[1,2]})"));
    const RunResult res = run_cli("report " + a + " " + b);
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("command") == "report");
    const json& docs = doc.at("documents");
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].at("source") == a);
    CHECK(docs[0].at("document") == json::parse(R"({"x":1})"));
    CHECK(docs[1].at("document").at("y")[1] == 2);

    CHECK(run_cli("report").exit_code == 3);
    CHECK(run_cli("report " + a + " --format csv").exit_code == 3);
}

TEST_CASE("environment thread override is validated") {
    json base = json::parse(R"({"schema":1,"N":3,"s":0.5})");
    const std::string cfg = write_json("threads_cfg.json", base);
    CHECK(run_cli("spectral --config " + cfg, "FHARDY_THREADS=abc ").exit_code == 3);
    CHECK(run_cli("spectral --config " + cfg, "FHARDY_THREADS=0 ").exit_code == 3);
    CHECK(run_cli("spectral --config " + cfg, "FHARDY_THREADS=2 ").exit_code == 0);
}

TEST_CASE("seed is echoed when supplied") {
    json base = json::parse(R"({"schema":1,"N":3,"s":0.5})");
    const std::string cfg = write_json("seed_cfg.json", base);
    const RunResult res = run_cli("spectral --config " + cfg + " --seed 7");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc.at("seed") == 7);
}
