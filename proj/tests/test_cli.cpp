#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef SNNBP_CLI_PATH
#error "SNNBP_CLI_PATH must point at the snnbp binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "snnbp_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args, const std::string& env = "") {
    const fs::path log = work_dir() / "cmd.log";
    std::string cmd = env + (env.empty() ? "" : " ") + SNNBP_CLI_PATH + " " + args + " > " +
                      log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(log);
    std::ostringstream os;
    os << f.rdbuf();
    r.output = os.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("construct writes a deterministic alist with a girth report") {
    const auto a1 = work_dir() / "a1.alist";
    const auto a2 = work_dir() / "a2.alist";
    auto r1 = run("construct --n 600 --dv 3 --dc 15 --code-seed 4 -o " + a1.string());
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r1.output.find("girth >= 6: yes") != std::string::npos);
    REQUIRE(r1.output.find("regular: yes") != std::string::npos);
    auto r2 = run("construct --n 600 --dv 3 --dc 15 --code-seed 4 -o " + a2.string());
    REQUIRE(r2.exit_code == 0);
    REQUIRE(slurp(a1) == slurp(a2));  // same seed, same bytes
    REQUIRE(fs::exists(a1.string() + ".manifest.json"));
    auto manifest = json::parse(slurp(a1.string() + ".manifest.json"));
    REQUIRE(manifest["command"] == "construct");
    REQUIRE(manifest["config"]["report"]["girth_ge_6"] == true);
}

TEST_CASE("construct exits 3 when the parameters are infeasible") {
    auto r = run("construct --n 15 --dv 3 --dc 15 -o " + (work_dir() / "x.alist").string());
    REQUIRE(r.exit_code == 3);
}

TEST_CASE("simulate produces csv, json mirror, and manifest") {
    const auto code = work_dir() / "sim.alist";
    REQUIRE(run("construct --n 300 --dv 3 --dc 6 --code-seed 2 -o " + code.string()).exit_code == 0);
    const auto prefix = (work_dir() / "run1").string();
    const std::string cmd = "simulate --code " + code.string() +
                            " --decoder nms --ebn0 1.0,2.0 --min-errors 25 --max-codewords 2000 "
                            "--seed 11 --workers 2 -o " + prefix;
    auto r = run(cmd);
    REQUIRE(r.exit_code == 0);

    const auto csv = slurp(prefix + ".csv");
    REQUIRE(csv.rfind("ebn0_db,bits,bit_errors,ber,wilson_low,wilson_high,frames,frame_errors,"
                      "fer,decoder,code,seed\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 grid points

    auto mirror = json::parse(slurp(prefix + ".json"));
    REQUIRE(mirror["points"].size() == 2);
    REQUIRE(mirror["config"]["decoder"]["algorithm"] == "nms");
    REQUIRE(mirror["config"]["master_seed"] == 11);
    REQUIRE(fs::exists(prefix + ".manifest.json"));

    // byte-identical on re-run
    const auto prefix2 = (work_dir() / "run2").string();
    REQUIRE(run("simulate --code " + code.string() +
                " --decoder nms --ebn0 1.0,2.0 --min-errors 25 --max-codewords 2000 --seed 11 "
                "--workers 1 -o " + prefix2)
                .exit_code == 0);
    REQUIRE(slurp(prefix2 + ".csv") == csv);  // worker count does not leak into results
}

TEST_CASE("simulate reproduces a named decoder configuration") {
    const auto code = work_dir() / "sim.alist";
    const auto prefix = (work_dir() / "mle").string();
    auto r = run("simulate --code " + code.string() +
                 " --decoder ml-elena --levels 16 --theta1 0.7 --gamma 1 --design-ebn0 2.8 "
                 "--reliability fixed --ebn0 2.0 --min-errors 10 --max-codewords 300 --seed 3 -o " +
                 prefix);
    REQUIRE(r.exit_code == 0);
    auto mirror = json::parse(slurp(prefix + ".json"));
    REQUIRE(mirror["config"]["decoder"]["scnu"]["levels"] == 16);
    REQUIRE(mirror["config"]["decoder"]["scnu"]["theta1"] == 0.7);
    REQUIRE(mirror["config"]["decoder"]["scnu"]["theta2"] == 0.7);
    REQUIRE(mirror["config"]["reliability"] == "fixed");
    REQUIRE(mirror["config"]["design_ebn0_db"] == 2.8);
    const auto csv = slurp(prefix + ".csv");
    REQUIRE(csv.find("ml-elena(L=16,theta1=0.7,theta2=0.7)-it20") != std::string::npos);
}

TEST_CASE("simulate can construct its code on the fly") {
    const auto prefix = (work_dir() / "otf").string();
    auto r = run("simulate --n 120 --dv 3 --dc 6 --code-seed 5 --decoder ms --ebn0 2.0 "
                 "--min-errors 10 --max-codewords 500 -o " + prefix);
    REQUIRE(r.exit_code == 0);
    auto mirror = json::parse(slurp(prefix + ".json"));
    REQUIRE(mirror["config"]["code"]["n"] == 120);
    REQUIRE(mirror["config"]["rate"] == 0.5);
}

TEST_CASE("sweep writes theta1/theta2/ber rows and reports the argmin") {
    const auto code = work_dir() / "sim.alist";
    const auto prefix = (work_dir() / "sweep").string();
    auto r = run("sweep --code " + code.string() +
                 " --levels 4 --gamma 1 --design-ebn0 2.5 --theta1-grid 0.4,0.8,2.5 "
                 "--min-errors 20 --max-codewords 600 --seed 5 -o " + prefix);
    REQUIRE(r.exit_code == 0);
    const auto csv = slurp(prefix + ".csv");
    REQUIRE(csv.rfind("theta1,theta2,ber,wilson_low,wilson_high\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 4);
    auto manifest = json::parse(slurp(prefix + ".manifest.json"));
    REQUIRE(manifest["config"]["argmin"].contains("theta1"));
    REQUIRE(r.output.find("argmin") != std::string::npos);
}

TEST_CASE("characterize emits the exact staircase") {
    const auto out = (work_dir() / "transfer.csv").string();
    auto r = run("characterize --levels 4 --theta1 1 --theta2 1 --grid 0:0.5:5 -o " + out);
    REQUIRE(r.exit_code == 0);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    REQUIRE(line == "min_mag,raw_output");
    while (std::getline(csv, line)) {
        const auto comma = line.find(',');
        const double m = std::stod(line.substr(0, comma));
        const double raw = std::stod(line.substr(comma + 1));
        double expect = 0.0;
        for (int l = 1; l <= 4; ++l)
            if (m > 1.0 * l) expect += 1.0;
        REQUIRE(raw == expect);
    }
}

TEST_CASE("config file supplies defaults, flags win") {
    const auto cfg = work_dir() / "conf.ini";
    std::ofstream(cfg) << "[characterize]\nlevels=2\ntheta1=1.0\ntheta2=1.0\ngrid=0:1:3\n";
    const auto out1 = (work_dir() / "c1.csv").string();
    REQUIRE(run("--config " + cfg.string() + " characterize -o " + out1).exit_code == 0);
    REQUIRE(slurp(out1).find("2.5") == std::string::npos);  // grid is 0..3 step 1
    REQUIRE(slurp(out1) == "min_mag,raw_output\n0,0\n1,0\n2,1\n3,2\n");

    const auto out2 = (work_dir() / "c2.csv").string();
    REQUIRE(run("--config " + cfg.string() + " characterize --theta2 5 -o " + out2).exit_code == 0);
    REQUIRE(slurp(out2) == "min_mag,raw_output\n0,0\n1,0\n2,5\n3,10\n");
}

TEST_CASE("SNNBP_OUTDIR redirects relative outputs") {
    const auto dir = work_dir() / "redirected";
    auto r = run("characterize --levels 1 --theta1 1 --grid 0:1:2 -o env.csv",
                 "SNNBP_OUTDIR=" + dir.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(dir / "env.csv"));
    REQUIRE(fs::exists(dir / "env.csv.manifest.json"));
}

TEST_CASE("usage and file errors map to exit code 2") {
    REQUIRE(run("simulate").exit_code == 2);  // missing required output
    REQUIRE(run("simulate --decoder turbo -o x").exit_code == 2);
    REQUIRE(run("characterize --levels 4 --theta1 1 --grid '' -o x.csv").exit_code == 2);
    const auto bad = work_dir() / "bad.alist";
    std::ofstream(bad) << "3 2\n2 2\n1 2 1\n2 2\n1\n";  // truncated
    REQUIRE(run("simulate --code " + bad.string() + " --decoder nms --ebn0 1.0 -o y").exit_code ==
            2);
    REQUIRE(run("simulate --code /nonexistent.alist --decoder nms --ebn0 1.0 -o z").exit_code == 2);
}
