#include "tfm/xlab/report.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using tfm::xlab::CsvDocument;
using tfm::xlab::read_report;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() / ("tfmult_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

struct Run {
    int code = -1;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs tfmult with the given arguments; stdout goes to `out_file` if non-empty.
Run tfmult(const std::string& args, const std::string& out_file = "") {
    const auto err = workdir() / "stderr.txt";
    std::string cmd = std::string(TFMULT_EXE) + " " + args;
    cmd += out_file.empty() ? " > /dev/null" : " > '" + (workdir() / out_file).string() + "'";
    cmd += " 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const auto p = workdir() / name;
    std::ofstream(p) << body;
    return p;
}

} // namespace

TEST_CASE("every subcommand: config file -> CSV -> parse") {
    struct Case {
        const char* sub;
        const char* config;
        const char* experiment;
    };
    const Case cases[] = {
        {"norm", R"({"p": "1", "q": "inf", "seed": 7})", "norm"},
        {"multiplier", R"({"phase": "schrodinger_t", "t": 0.5, "p": 1, "q": 1, "seed": 7})", "multiplier"},
        {"dilation-scan", R"({"p": "2", "q": "2", "jmax": 3, "regime": "both", "seed": 7})", "dilation_scan"},
        {"threshold-scan", R"({"p": "1", "alpha": 3, "jmax": 4, "deltas": [0, 0.5], "seed": 7})", "threshold_scan"},
        {"schrodinger-scan", R"({"times": [0.5, 1], "seed": 7})", "schrodinger_scan"},
        {"dyadic-sum", R"({"p": "1", "J": [4], "packets": 2, "seed": 7})", "dyadic_sum_mp1"},
        {"exp-bound", R"({"phase": "power_abs", "alpha": 2, "s": [1, 2, 4], "seed": 7})", "exp_bound"},
        {"indices", R"({"divisions": 4, "d": 2, "seed": 7})", "indices"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.sub);
        const auto cfg = write_config(std::string(c.sub) + ".json", c.config);
        const auto out = workdir() / (std::string(c.sub) + ".csv");
        const auto r = tfmult(std::string(c.sub) + " --config '" + cfg.string() + "' --out '" + out.string() + "'");
        CAPTURE(r.err);
        REQUIRE(r.code == 0);
        const CsvDocument doc = read_report(out.string());
        CHECK(doc.seed == 7);
        CHECK(doc.version == tfm::xlab::version);
        REQUIRE(!doc.records.empty());
        CHECK(doc.records.front().experiment == c.experiment);
        for (const auto& rec : doc.records) {
            CHECK(rec.input_norm > 0.0);
            CHECK(std::isfinite(rec.ratio));
        }
        CHECK(r.err.find("PASS") != std::string::npos);
    }
}

TEST_CASE("command-line flags override the config file") {
    const auto cfg = write_config("override.json", R"({"n": 2048, "seed": 3})");
    const auto out = workdir() / "override.csv";
    const auto r = tfmult("norm --n 1024 --config '" + cfg.string() + "' --out '" + out.string() + "'");
    REQUIRE(r.code == 0);
    const auto doc = read_report(out.string());
    CHECK(doc.grid == "1,1024,64");
    CHECK(doc.seed == 3);
}

TEST_CASE("CSV goes to stdout without --out") {
    REQUIRE(tfmult("indices --divisions 2", "stdout.csv").code == 0);
    const auto doc = tfm::xlab::parse_csv(slurp(workdir() / "stdout.csv"));
    CHECK(doc.records.size() == 2 * 9);
}

TEST_CASE("repeat runs are byte-identical") {
    const auto a = workdir() / "rep_a.csv", b = workdir() / "rep_b.csv";
    const std::string args = "multiplier --phase random --p 2 --q 1 --seed 99 --out ";
    REQUIRE(tfmult(args + "'" + a.string() + "'").code == 0);
    REQUIRE(tfmult(args + "'" + b.string() + "'").code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("refinement levels are merged and drift is reported") {
    const auto out = workdir() / "refine.csv";
    const auto r = tfmult("norm --refine 1 --out '" + out.string() + "'");
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    CHECK(r.err.find("drift") != std::string::npos);
    bool r0 = false, r1 = false;
    for (const auto& rec : read_report(out.string()).records) {
        r0 |= rec.param_json.find("\"refine\":0") != std::string::npos;
        r1 |= rec.param_json.find("\"refine\":1") != std::string::npos;
    }
    CHECK(r0);
    CHECK(r1);
}

TEST_CASE("exit codes") {
    SUBCASE("3: a failing check under --check") {
        const auto r = tfmult("norm --check --slack -1");
        CHECK(r.code == 3);
        CHECK(r.err.find("FAIL") != std::string::npos);
        CHECK(tfmult("norm --slack -1").code == 0); // without --check failures are reported only
        CHECK(tfmult("norm --check").code == 0);
    }
    SUBCASE("1: usage and configuration errors") {
        CHECK(tfmult("").code == 1);
        CHECK(tfmult("frobnicate").code == 1);
        CHECK(tfmult("norm --bogus 1").code == 1);
        CHECK(tfmult("norm --n 1000").code == 1);
        CHECK(tfmult("norm --p 0.5").code == 1);
        CHECK(tfmult("norm --refine 9").code == 1);
        CHECK(tfmult("norm --config '" + (workdir() / "missing.json").string() + "'").code == 1);
        CHECK(tfmult("norm --config '" + write_config("bad.json", "{ nope").string() + "'").code == 1);
        const auto r = tfmult("norm --config '" + write_config("key.json", R"({"colour": 1})").string() + "'");
        CHECK(r.code == 1);
        CHECK(r.err.find("colour") != std::string::npos);
        CHECK(tfmult("norm --out /nonexistent-dir/x.csv").code == 1);
    }
    SUBCASE("2: numerical guards") {
        const auto r = tfmult("norm --n 32 --extent 64");
        CHECK(r.code == 2);
        CHECK(r.err.find("guard") != std::string::npos);
    }
}

TEST_CASE("cleanup") { fs::remove_all(workdir()); }
