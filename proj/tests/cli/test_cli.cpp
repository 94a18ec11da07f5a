// Exercises the installed command-line surface end to end: exit codes,
// JSON output, scan determinism and resume, and the config-file override
// order. Each case shells out to the real binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ellseq/scan.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    std::string path = "cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = std::string(ELLSEQ_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    r.out = os.str();
    std::remove(path.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("order: values and exit codes") {
    RunResult ok = run("order --q 2 --a 1 --n 5");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("N_n   = 22") != std::string::npos);
    CHECK(ok.out.find("2 * 11") != std::string::npos);

    RunResult bad = run("order --q 1 --a 0 --n 1");
    CHECK(bad.exit_code == 2);

    RunResult hasse = run("order --q 4 --a 5 --n 1");
    CHECK(hasse.exit_code == 2);

    RunResult degen = run("order --q 2 --a 2 --n 1");
    CHECK(degen.exit_code == 0);
    CHECK(degen.out.find("root of unity") != std::string::npos);
}

TEST_CASE("order: json output") {
    RunResult r = run("--json order --q 2 --a 1 --n 5");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["N_n"] == "22");
    CHECK(j["t_n"] == "11");
    CHECK(j["complete"] == true);
    CHECK(j["primitive"][0]["p"] == "11");
}

TEST_CASE("scan: csv and json encodings carry the same information") {
    RunResult c = run("scan --q-min 2 --q-max 3 --n-min 1 --n-max 8 --format csv --out "
                      "cli_scan.csv");
    CHECK(c.exit_code == 0);
    RunResult j = run("scan --q-min 2 --q-max 3 --n-min 1 --n-max 8 --format json --out "
                      "cli_scan.jsonl");
    CHECK(j.exit_code == 0);

    std::ifstream csv("cli_scan.csv");
    std::ifstream jsonl("cli_scan.jsonl");
    std::string line;
    std::getline(csv, line);  // header
    CHECK(line == ellseq::csv_header());
    int rows = 0;
    while (std::getline(csv, line)) {
        std::string jline;
        REQUIRE(std::getline(jsonl, jline));
        ellseq::ScanRow a = ellseq::decode_csv_row(line);
        ellseq::ScanRow b = ellseq::decode_json_row(jline);
        CHECK(a.q == b.q);
        CHECK(a.a == b.a);
        CHECK(a.n == b.n);
        CHECK(a.N_n == b.N_n);
        CHECK(a.t_n == b.t_n);
        CHECK(a.factor_summary == b.factor_summary);
        CHECK(a.complete == b.complete);
        CHECK(a.P == b.P);
        ++rows;
    }
    CHECK(rows == 12 * 8);
    std::remove("cli_scan.csv");
    std::remove("cli_scan.jsonl");
}

TEST_CASE("scan: determinism and checkpoint resume") {
    std::string base = "scan --q-min 2 --q-max 3 --n-min 1 --n-max 6 --format csv";
    CHECK(run(base + " --out cli_a.csv").exit_code == 0);
    CHECK(run(base + " --out cli_b.csv").exit_code == 0);
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));

    CHECK(run(base + " --out cli_c.csv --checkpoint cli_c.ck --max-rows 20").exit_code == 0);
    CHECK(run(base + " --out cli_c.csv --checkpoint cli_c.ck --resume").exit_code == 0);
    CHECK(slurp("cli_c.csv") == slurp("cli_a.csv"));

    for (const char* f : {"cli_a.csv", "cli_b.csv", "cli_c.csv", "cli_c.ck"}) std::remove(f);
}

TEST_CASE("sunit-theta and crt-class") {
    RunResult t = run("--json sunit-theta --x 10 --primes 2,3");
    CHECK(t.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(t.out);
    CHECK(j["theta"] == 7);

    RunResult c = run("--json crt-class --n 15 --d 3");
    CHECK(c.exit_code == 0);
    nlohmann::json cj = nlohmann::json::parse(c.out);
    CHECK(cj["residue"] == "4");
    CHECK(cj["modulus"] == 15);

    RunResult bad = run("crt-class --n 9 --d 3");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("bound-report emits the inequality table") {
    RunResult r = run("--json bound-report --q 2 --a 1 --n 12");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["fundamental_disc"] == "-7");
    CHECK(j["n0"] == "exp(exp(10000000000))");
    bool saw_height = false;
    for (const auto& rep : j["reports"]) {
        if (rep["name"] == "cyclo_height_deviation") {
            saw_height = true;
            CHECK(rep["holds"] == "pass");
        }
    }
    CHECK(saw_height);
}

TEST_CASE("verify: a small bounded suite passes") {
    RunResult r = run("verify bounds --n-max 20000 --grid-q-max 3 --grid-n-max 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);

    RunResult bad = run("verify nosuch");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("config file supplies defaults, flags override") {
    {
        std::ofstream cfg("cli_test.cfg");
        cfg << "json=true\n";
        cfg << "[order]\n";
        cfg << "q=2\n";
        cfg << "a=1\n";
        cfg << "n=5\n";
    }
    RunResult viafile = run("--config cli_test.cfg order");
    CHECK(viafile.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(viafile.out);
    CHECK(j["N_n"] == "22");

    // a flag on the command line wins over the file value
    RunResult override_n = run("--config cli_test.cfg order --n 3");
    CHECK(override_n.exit_code == 0);
    nlohmann::json j3 = nlohmann::json::parse(override_n.out);
    CHECK(j3["N_n"] == "14");
    std::remove("cli_test.cfg");
}
