#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// Process-level checks of the espg binary: exit codes and report shape.

namespace {

const std::string kBin = ESPG_CLI_BIN;
const std::string kData = ESP_DATA_DIR;

int run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string tmp_json(const char* tag) {
    return std::string("/tmp/espg_test_") + tag + ".json";
}

}  // namespace

TEST_CASE("verify-quasifield exit codes") {
    CHECK(run("--prime 5 verify-quasifield") == 0);
    CHECK(run("--prime 2 verify-quasifield") == 0);
    CHECK(run("--table " + kData + "/hall9.qtable verify-quasifield") == 0);
    CHECK(run("--table " + kData + "/f3.qtable verify-quasifield") == 0);

    // An axiom violation exits 1 and the JSON carries a witness.
    const std::string bad = "/tmp/espg_bad_axiom.qtable";
    std::ofstream(bad) << "q 3\none 1\n"
                          "add: 0 0 1 2\nadd: 1 1 2 0\nadd: 2 2 0 1\n"
                          "mul: 0 0 0 0\nmul: 1 0 1 2\nmul: 2 0 2 2\n";
    const std::string out = tmp_json("witness");
    CHECK(run("--table " + bad + " verify-quasifield --json " + out) == 1);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"pass\": false") != std::string::npos);
    CHECK(rep.find("witness") != std::string::npos);
    std::remove(bad.c_str());

    // Unparseable input is a usage-class failure: exit 2.
    const std::string garbage = "/tmp/espg_garbage.qtable";
    std::ofstream(garbage) << "not a table\n";
    CHECK(run("--table " + garbage + " verify-quasifield") == 2);
    std::remove(garbage.c_str());
}

TEST_CASE("usage errors") {
    CHECK(run("") == 2);                           // missing subcommand
    CHECK(run("verify-quasifield") == 2);          // missing source
    CHECK(run("--prime 3 --table " + kData + "/f3.qtable verify-quasifield") ==
          2);                                      // mutually exclusive
    CHECK(run("--prime 4 verify-quasifield") == 2);  // not prime
    CHECK(run("--prime 3 nonsense") == 2);
    CHECK(run("--help") == 0);
    CHECK(run("coverage --help") == 0);
}

TEST_CASE("group-check") {
    CHECK(run("--prime 3 -n 1 group-check --family M") == 0);
    CHECK(run("--prime 5 -n 2 group-check --family H") == 0);
    CHECK(run("--prime 3 -n 2 group-check --family M") == 0);
    // The M family needs a prime source: usage error.
    CHECK(run("--table " + kData +
              "/hall9.qtable -n 1 group-check --family M") == 2);
    // Non-field tables run the loop contract instead of the presentation.
    const std::string out = tmp_json("loop");
    CHECK(run("--table " + kData + "/hall9.qtable -n 1 group-check --json " +
              out) == 0);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"mode\": \"loop\"") != std::string::npos);
    CHECK(rep.find("left-cancellation") != std::string::npos);
}

TEST_CASE("coverage") {
    const std::string out = tmp_json("coverage");
    CHECK(run("--prime 3 -n 1 coverage --brick " + kData +
              "/full_m3.brick --json " + out) == 0);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"N\": 9") != std::string::npos);
    CHECK(rep.find("\"certified\": 9") != std::string::npos);

    // Large-Z bricks report the branch result.
    CHECK(run("coverage --brick " + kData + "/largez_p3.brick --json " + out) ==
          0);
    const std::string rep2 = slurp(out);
    CHECK(rep2.find("\"largeZ\"") != std::string::npos);
    CHECK(rep2.find("\"holds\": true") != std::string::npos);

    CHECK(run("coverage --brick /nonexistent.brick") == 2);
    CHECK(run("--prime 5 coverage --brick " + kData + "/full_m3.brick") == 2);
    CHECK(run("coverage --brick " + kData + "/hall9_n1.brick --family H") == 0);
    // hall9 cannot host the M family.
    CHECK(run("coverage --brick " + kData + "/hall9_n1.brick --family M") == 2);
}

TEST_CASE("spectral and mixing") {
    const std::string out = tmp_json("spectral");
    CHECK(run("--prime 3 -n 1 spectral --json " + out) == 0);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"lambda2\": 1.732") != std::string::npos);
    CHECK(rep.find("\"allPass\": true") != std::string::npos);

    CHECK(run("--table " + kData + "/hall9.qtable -n 1 spectral") == 0);
    CHECK(run("--prime 7 -n 3 spectral") == 2);   // dense eigensolve guard
    CHECK(run("--prime 11 -n 3 spectral") == 2);  // graph build guard
    CHECK(run("--prime 3 -n 1 mixing --samples 50") == 0);
    CHECK(run("--prime 2 -n 1 mixing") == 0);
}

TEST_CASE("theorem-demo") {
    CHECK(run("--prime 3 -n 1 theorem-demo --exhaustive") == 0);
    CHECK(run("--prime 3 -n 2 theorem-demo --samples 50") == 0);
    CHECK(run("--table " + kData + "/hall9.qtable -n 1 theorem-demo "
              "--samples 20") == 0);
    CHECK(run("--prime 7 -n 3 theorem-demo") == 2);  // q^(2n) guard
}

TEST_CASE("reports are byte-identical across runs") {
    const std::string a = tmp_json("det_a"), b = tmp_json("det_b");
    const std::string cmds[] = {
        "--prime 3 -n 1 spectral --seed 0 --json ",
        "--prime 3 -n 1 mixing --samples 25 --seed 0 --json ",
        "--prime 3 -n 2 theorem-demo --samples 25 --seed 0 --json ",
        "coverage --brick " + kData + "/largez_p3.brick --seed 0 --json ",
    };
    for (const auto& cmd : cmds) {
        CHECK(run(cmd + a) == 0);
        CHECK(run(cmd + b) == 0);
        const std::string ra = slurp(a), rb = slurp(b);
        CHECK(ra == rb);
        CHECK_FALSE(ra.empty());
    }
}
