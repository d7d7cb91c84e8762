#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = "cli_test_out.tmp";
    std::string cmd = std::string(GCDLAB_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WEXITSTATUS(rc);
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

}  // namespace

TEST_CASE("sigma subcommand") {
    auto r = run_cli("sigma --s -1 --k 6");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"sigma\": 2.0") != std::string::npos);
}

TEST_CASE("unknown flags produce usage and exit 1") {
    auto r = run_cli("sigma --s -1 --k 6 --bogus-flag 3");
    CHECK(r.status == 1);
    auto r2 = run_cli("nonsense");
    CHECK(r2.status == 1);
}

TEST_CASE("franel max emits 465 exact rationals") {
    auto r = run_cli("franel --max 30 --format csv");
    CHECK(r.status == 0);
    int lines = 0;
    for (char c : r.output)
        if (c == '\n') ++lines;
    CHECK(lines == 466);  // header + C(30,2) + 30 diagonal
    CHECK(r.output.find("2,3,1/72") != std::string::npos);
    CHECK(r.output.find("1,1,1/12") != std::string::npos);
}

TEST_CASE("eig json carries the certified interval") {
    auto r = run_cli("eig --alpha 0.75 --n 64 --min");
    CHECK(r.status == 0);
    CHECK(r.output.find("certified_interval") != std::string::npos);
    CHECK(r.output.find("min_lambda") != std::string::npos);
    CHECK(r.output.find("\"converged\": true") != std::string::npos);
}

TEST_CASE("matrix csv dump") {
    auto r = run_cli("eig --alpha 0.75 --n 4 --dump-matrix cli_matrix.tmp");
    CHECK(r.status == 0);
    std::ifstream in("cli_matrix.tmp");
    std::string header;
    std::getline(in, header);
    CHECK(header == "row,c1,c2,c3,c4");
}

TEST_CASE("norm reports oracle containment") {
    auto r = run_cli("norm --alpha 0.75 --profile sine --dilations 1,2,6 --coeffs 0.5,-1,0.25");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"oracle_contains_exact\": true") != std::string::npos);
}

TEST_CASE("extremal th1 blocks serialize") {
    auto r = run_cli("extremal --variant th1 --alpha 0.75 --eps 0.1 --imax 2");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"value\": \"48\"") != std::string::npos);
}

TEST_CASE("simulate byte-identical across threads and config file merge") {
    auto a = run_cli("simulate --seed 5 --samples 300 --alpha 0.75 --n 6 --threads 1");
    auto b = run_cli("simulate --seed 5 --samples 300 --alpha 0.75 --n 6 --threads 2");
    CHECK(a.status == 0);
    CHECK(a.output == b.output);

    {
        std::ofstream cfg("cli_sim_config.tmp");
        cfg << "{\"seed\": 5, \"samples\": 300, \"alpha\": 0.75, \"n\": 6}";
    }
    auto c = run_cli("simulate --config cli_sim_config.tmp --threads 2");
    CHECK(c.output == a.output);
    // flags override the file
    auto d = run_cli("simulate --config cli_sim_config.tmp --samples 200");
    CHECK(d.status == 0);
    CHECK(d.output != a.output);
    CHECK(d.output.find("\"samples\": 200") != std::string::npos);
}

TEST_CASE("verify runs a single fast criterion") {
    auto r = run_cli("verify --suite primary --criterion 7");
    CHECK(r.status == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("gronwall") != std::string::npos);
}
