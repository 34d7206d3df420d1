#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "smoothpile/field_io.hpp"

using namespace smoothpile;
namespace fs = std::filesystem;

#ifdef SMOOTHPILE_CLI_PATH

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SMOOTHPILE_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("smoothpile_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli mass check reports the expected mass") {
    const auto dir = temp_dir("mass");
    const RunResult r = run_cli("mass-check --p 1 --q 2 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"mass\": 5") != std::string::npos);
    CHECK(r.out.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("cli verify-movable reports the documented shift") {
    const auto dir = temp_dir("movable");
    const RunResult r = run_cli("verify-movable --p 1 --q 3 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"shift\": [") != std::string::npos);
    CHECK(r.out.find("1,\n      2") != std::string::npos);
}

TEST_CASE("cli relax round trips through field dumps") {
    const auto dir = temp_dir("relax");
    const DomainPtr dom = Domain::box(0, 10, 0, 10, 1);
    SandpileState phi(dom, 3);
    phi[dom->vertex_at(Point{5, 5})] += 1;
    save_field(phi.field, (dir / "state.txt").string());

    const RunResult r =
        run_cli("relax --input " + (dir / "state.txt").string() + " --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"stable\": true") != std::string::npos);

    const IntegerField final_state = load_field((dir / "relaxed_state.txt").string());
    const RelaxationOutcome expect = relax(phi);
    CHECK(final_state == expect.final.field);
    const IntegerField odo = load_field((dir / "odometer.txt").string());
    CHECK(odo == expect.odometer);
}

TEST_CASE("cli emits byte-identical rasters across runs") {
    const auto dir1 = temp_dir("render1");
    const auto dir2 = temp_dir("render2");
    for (const auto& dir : {dir1, dir2}) {
        const RunResult r = run_cli("soliton --p 1 --q 3 --render view.ppm --out " + dir.string());
        REQUIRE(r.exit_code == 0);
    }
    std::ifstream a(dir1 / "view.ppm", std::ios::binary);
    std::ifstream b(dir2 / "view.ppm", std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    REQUIRE_FALSE(sa.empty());
    CHECK(sa == sb);
}

TEST_CASE("cli failure modes use the documented exit codes") {
    const auto dir = temp_dir("errs");
    // non-primitive direction: bad input
    CHECK(run_cli("mass-check --p 2 --q 4 --out " + dir.string()).exit_code == 4);
    // iteration cap too small: window/budget error
    CHECK(run_cli("theta --p 3 --q 4 --max-iters 1 --out " + dir.string()).exit_code == 3);
    // missing input file
    CHECK(run_cli("relax --input /nonexistent.txt --out " + dir.string()).exit_code == 4);
}

TEST_CASE("cli wave command counts topplings") {
    const auto dir = temp_dir("wave");
    const DomainPtr dom = Domain::box(0, 8, 0, 8, 1);
    const SandpileState phi(dom, 3);
    save_field(phi.field, (dir / "state.txt").string());
    const RunResult r = run_cli("wave --input " + (dir / "state.txt").string() +
                                " --source 4,4 --count 2 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "wave_1_odometer.txt"));
    CHECK(fs::exists(dir / "wave_2_state.txt"));
}

#endif  // SMOOTHPILE_CLI_PATH

#ifdef SMOOTHPILE_CLI_PATH

TEST_CASE("cli reads forms from a json file") {
    const auto dir = temp_dir("forms");
    std::ofstream((dir / "forms.json")) << "[[0,0,0],[1,2,0],[1,2,9]]";
    const RunResult r = run_cli("smooth --forms-file " + (dir / "forms.json").string() +
                                " --n 1 --window -12,12,-12,12 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"redundant_forms\": [\n      2\n    ]") != std::string::npos);
}

#endif

#ifdef SMOOTHPILE_CLI_PATH

TEST_CASE("cli rejects malformed forms files") {
    const auto dir = temp_dir("badforms");
    std::ofstream((dir / "bad.json")) << "{not json";
    CHECK(run_cli("smooth --forms-file " + (dir / "bad.json").string() + " --out " +
                  dir.string()).exit_code == 4);
    std::ofstream((dir / "bad2.json")) << "[[1,2],[3]]";
    CHECK(run_cli("smooth --forms-file " + (dir / "bad2.json").string() + " --out " +
                  dir.string()).exit_code == 4);
}

#endif
