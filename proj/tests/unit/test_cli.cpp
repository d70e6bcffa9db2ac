#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "melcert/commands.hpp"
#include "oracle.hpp"

using namespace melcert;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / ("melcert_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(MELCERT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int root(const std::string& config, const fs::path& out)
{
    CommandOptions opt;
    opt.config = config;
    opt.out = out.string();
    std::ostringstream o, e;
    return cmd_certify_root(opt, o, e);
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> r;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) r.push_back(cell);
        rows.push_back(r);
    }
    return rows;
}

// first integrals for lambda = omega = 1
double H(const double* x)
{
    return x[0] * x[2] + x[1] * x[3] - (x[1] * x[2] - x[0] * x[3]) -
           std::sqrt(0.5) * (std::pow(x[0] * x[0] + x[1] * x[1], 2) + std::pow(x[2] * x[2] + x[3] * x[3], 2));
}
double K(const double* x) { return x[1] * x[2] - x[0] * x[3]; }

} // namespace

TEST_CASE("certify-root on y^2 - 2")
{
    auto d = scratch_dir("sqrt2");
    REQUIRE(root(std::string(MELCERT_SOURCE_DIR) + "/configs/sqrt2.json", d / "c.json") == exitVerified);
    auto j = nlohmann::json::parse(slurp(d / "c.json"));
    CHECK(j["verdict"] == "verified");
    double lo = j["blocks"]["enclosure"][0][0], hi = j["blocks"]["enclosure"][0][1];
    CHECK(hi - lo <= 1e-12);
    oracle::mp s = boost::multiprecision::sqrt(oracle::mp(2));
    CHECK(oracle::encloses(Interval(lo, hi), s));
    CHECK(lo <= 1.4142135623730951);
    CHECK(1.4142135623730951 <= hi);
    for (const char* k : {"problem", "blocks", "margins", "verdict", "assumptions", "toolVersion", "wallTimeSeconds"})
        CHECK(j.contains(k));
    fs::remove_all(d);
}

TEST_CASE("certify-root exit codes")
{
    auto d = scratch_dir("root_codes");
    CHECK(root(std::string(MELCERT_SOURCE_DIR) + "/configs/no_real_root.json", d / "a.json") == exitFailed);
    CHECK(nlohmann::json::parse(slurp(d / "a.json"))["verdict"] == "failed");
    auto bad = write(d / "bad.json", R"({"variables": ["y"], "equations": ["y^^2 - 2"], "Y": [[1, 2]]})");
    CHECK(root(bad, d / "b.json") == exitConfigError);
    auto unk = write(d / "unk.json", R"({"variables": ["y"], "equations": ["z - 2"], "Y": [[1, 2]]})");
    CHECK(root(unk, d / "b.json") == exitConfigError);
    auto extra = write(d / "extra.json", R"({"variables": ["y"], "equations": ["y - 2"], "Y": [[1, 3]], "tol": 1})");
    CHECK(root(extra, d / "b.json") == exitConfigError);
    auto inv = write(d / "inv.json", R"({"variables": ["y"], "equations": ["y - 2"], "Y": [[3, 1]]})");
    CHECK(root(inv, d / "b.json") == exitConfigError);
    CHECK(root((d / "missing.json").string(), d / "b.json") == exitConfigError);
    fs::remove_all(d);
}

TEST_CASE("certify-root with parameters")
{
    auto d = scratch_dir("root_params");
    auto c = write(d / "p.json", R"({"parameters": ["a"], "variables": ["y", "z"],
        "equations": ["y^2 - a", "z - y*a"], "X": [[1.9, 2.1]], "Y": [[1.2, 1.6], [2, 4]]})");
    REQUIRE(root(c, d / "c.json") == exitVerified);
    auto j = nlohmann::json::parse(slurp(d / "c.json"));
    double lo = j["blocks"]["enclosure"][0][0], hi = j["blocks"]["enclosure"][0][1];
    CHECK(lo <= std::sqrt(1.9));
    CHECK(std::sqrt(2.1) <= hi);
    fs::remove_all(d);
}

TEST_CASE("certificates are reproducible apart from the wall time")
{
    auto d = scratch_dir("repro");
    std::string cfg = std::string(MELCERT_SOURCE_DIR) + "/configs/sqrt2.json";
    REQUIRE(root(cfg, d / "a.json") == exitVerified);
    REQUIRE(root(cfg, d / "b.json") == exitVerified);
    auto a = nlohmann::json::parse(slurp(d / "a.json")), b = nlohmann::json::parse(slurp(d / "b.json"));
    a.erase("wallTimeSeconds");
    b.erase("wallTimeSeconds");
    CHECK(a == b);
    auto strip = [](std::string s) { return s.substr(0, s.find("\"wallTimeSeconds\"")); };
    CHECK(strip(slurp(d / "a.json")) == strip(slurp(d / "b.json")));
    fs::remove_all(d);
}

TEST_CASE("lu config parsing")
{
    LUConfig c = parse_lu_config(R"({"R": 2e-5, "T": 7.5, "flow": {"taylorOrder": 10, "wrapping": "direct"},
                                     "fallback": {"transportTime": 0}})");
    CHECK(c.R == 2e-5);
    CHECK(c.T == 7.5);
    CHECK(c.flow.taylorOrder == 10);
    CHECK(c.flow.wrapping == Wrapping::direct);
    CHECK(c.fallbackTransportTime == 0);
    CHECK(c.epsMax == 1e-7);
    LUConfig def = parse_lu_config(slurp(fs::path(MELCERT_SOURCE_DIR) / "configs/lu_default.json"));
    CHECK(def.T == 9);
    CHECK(def.localRadius == 1.5e-4);
    CHECK(def.secondDerivBound == 3.518e-5);
    CHECK_THROWS_AS(parse_lu_config(R"({"flow": {"order": 3}})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config(R"({"R": "big"})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config(R"({"R": -1})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config(R"({"problem": "other"})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config(R"({"threads": 1.5})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config(R"({"fallback": {"referenceMixedBlock": [[1, 2]]}})"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_lu_config("{"), ConfigError);
}

TEST_CASE("lu-verify configuration errors")
{
    auto d = scratch_dir("lu_codes");
    CommandOptions opt;
    opt.out = (d / "c.json").string();
    std::ostringstream o, e;
    opt.config = (d / "missing.json").string();
    CHECK(cmd_lu_verify(opt, o, e) == exitConfigError);
    opt.config = write(d / "u.json", R"({"R": 1e-5, "radius": 3})");
    CHECK(cmd_lu_verify(opt, o, e) == exitConfigError);
    CHECK(e.str().find("radius") != std::string::npos);
    opt.config = write(d / "t.json", R"({"T": -1})");
    CHECK(cmd_lu_verify(opt, o, e) == exitConfigError);
    CHECK_FALSE(fs::exists(d / "c.json"));
    fs::remove_all(d);
}

TEST_CASE("export-samples writes manifold samples on the separatrix")
{
    auto d = scratch_dir("export");
    auto cfg = write(d / "e.json", R"({"samples": [
        {"side": "unstable", "eps": 0, "count": 50, "rho": 1e-4, "file": "u.csv"},
        {"side": "unstable", "eps": 0, "count": 20, "rho": 1.4e-4, "time": 9, "file": "uT.csv"},
        {"side": "stable", "eps": 0, "count": 20, "rho": 1e-4, "time": 4, "file": "sT.csv"},
        {"side": "stable", "count": 0, "file": "empty.csv"}],
        "boxes": [{"side": "unstable", "subdivisions": 3, "file": "bu.csv"},
                  {"side": "stable", "subdivisions": 2, "file": "bs.csv"}]})");
    CommandOptions opt;
    opt.config = cfg;
    opt.out = (d / "out").string();
    std::ostringstream o, e;
    REQUIRE(cmd_export_samples(opt, o, e) == exitVerified);

    for (const char* f : {"u.csv", "uT.csv", "sT.csv"}) {
        auto rows = read_csv(d / "out" / f);
        REQUIRE(rows.size() > 1);
        CHECK(rows[0] == std::vector<std::string>{"eps", "x1", "x2", "x3", "x4", "side"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].size() == 6);
            double x[4];
            for (int k = 0; k < 4; ++k) x[k] = std::stod(rows[i][k + 1]);
            CHECK(std::abs(H(x)) <= 1e-8);
            CHECK(std::abs(K(x)) <= 1e-8);
        }
    }
    CHECK(read_csv(d / "out" / "u.csv").size() == 51);
    CHECK(slurp(d / "out" / "empty.csv") == "eps,x1,x2,x3,x4,side\n");

    const double Lr = 1e-8 * 1.5e-4;
    auto check_boxes = [&](const char* f, int g0, std::size_t n) {
        auto rows = read_csv(d / "out" / f);
        REQUIRE(rows.size() == n + 1);
        CHECK(rows[0].size() == 15);
        for (std::size_t i = 1; i < rows.size(); ++i)
            for (int g = g0; g < g0 + 2; ++g) {
                double lo = std::stod(rows[i][7 + 2 * g]), hi = std::stod(rows[i][8 + 2 * g]);
                CHECK(lo <= 0);
                CHECK(hi >= 0);
                CHECK((hi - lo) / 2 <= Lr * (1 + 1e-12));
            }
    };
    check_boxes("bu.csv", 2, 9);
    check_boxes("bs.csv", 0, 4);
    fs::remove_all(d);
}

TEST_CASE("export-samples configuration errors")
{
    auto d = scratch_dir("export_codes");
    CommandOptions opt;
    opt.out = (d / "out").string();
    std::ostringstream o, e;
    for (const char* bad : {R"({"samples": [{"side": "left"}]})", R"({"samples": [{"count": -1}]})",
                            R"({"samples": [{"file": "../x.csv"}]})", R"({"boxes": [{"subdivisions": 0}]})",
                            R"({"samples": [{"file": "a.csv"}], "boxes": [{"file": "a.csv"}]})",
                            R"({"lu": {"T": 9, "extra": 1}})", R"({"plots": []})"}) {
        opt.config = write(d / "c.json", bad);
        CHECK_MESSAGE(cmd_export_samples(opt, o, e) == exitConfigError, bad);
    }
    fs::remove_all(d);
}

TEST_CASE("command line front end")
{
    auto d = scratch_dir("front");
    std::string src = MELCERT_SOURCE_DIR;
    CHECK(run_cli("certify-root --config " + src + "/configs/sqrt2.json --out " + (d / "a.json").string()) == 0);
    CHECK(run_cli("--threads 2 --verbose certify-root --config " + src + "/configs/sqrt2.json --out " +
                  (d / "a.json").string()) == 0);
    CHECK(run_cli("certify-root --config " + src + "/configs/no_real_root.json --out " + (d / "b.json").string()) ==
          1);
    CHECK(run_cli("lu-verify --config " + (d / "none.json").string() + " --out " + (d / "c.json").string()) == 2);
    CHECK(run_cli("lu-verify --out " + (d / "c.json").string()) == 2);
    CHECK(run_cli("--threads 0 lu-verify --config " + src + "/configs/lu_default.json --out x.json") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("export-samples --verbose --config " + src + "/configs/export_default.json --out-dir " +
                  (d / "exp").string()) == 0);
    CHECK(fs::exists(d / "exp" / "unstable_boxes.csv"));
    fs::remove_all(d);
}

// full rigorous pipeline; registered as a separate ctest entry
TEST_CASE("slow: lu-verify with a tiny radius fails")
{
    auto d = scratch_dir("lu_tiny");
    auto cfg = write(d / "c.json", R"({"R": 1e-12, "fallback": {"transportTime": 0}})");
    CHECK(run_cli("lu-verify --config " + cfg + " --out " + (d / "c.json.out").string()) == 1);
    auto j = nlohmann::json::parse(slurp(d / "c.json.out"));
    CHECK(j["verdict"] == "failed");
    CHECK(j["margins"]["y2"].get<double>() < 0);
    fs::remove_all(d);
}
