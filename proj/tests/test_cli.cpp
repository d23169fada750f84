#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("SUBFREQ_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SUBFREQ_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string example_file() {
    const std::string path = "cli_example.data";
    std::ofstream out(path);
    out << "5 3 2\n1 1 0\n0 1 0\n0 0 1\n1 1 1\n1 1 0\n";
    return path;
}

}  // namespace

TEST_CASE("moment queries on the worked example") {
    const std::string f = example_file();
    CHECK(run("query --in " + f + " --cols 0,1 --exact --p 0").out == "F0=3\n");
    CHECK(run("query --in " + f + " --cols 0,1 --exact --p 1").out == "F1=5\n");
    CHECK(run("query --in " + f + " --cols 0,1 --exact --p 2").out == "F2=11\n");
    CHECK(run("query --in " + f + " --cols 0,1 --pattern 1,1").out == "f=3\n");
}

TEST_CASE("ingest reports the shape and errors are one line") {
    const std::string f = example_file();
    CHECK(run("ingest --in " + f).out == "n=5 d=3 q=2\n");
    const RunResult bad = run("ingest --in does_not_exist.data");
    CHECK(bad.status == 1);
    CHECK(bad.out.rfind("error: ", 0) == 0);
    CHECK(bad.out.find('\n') == bad.out.size() - 1);
}

TEST_CASE("tradeoff emits the CSV row") {
    const RunResult r = run("tradeoff --d 20 --alphas 0.25");
    CHECK(r.status == 0);
    CHECK(r.out == "alpha,relative_space,approx_factor\n0.25,0.0731,32\n");
}

TEST_CASE("figure data grid has the documented columns") {
    const RunResult r = run("figure-data --d 20 --grid 3");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("alpha,relative_space,approx_factor,log2_approx_factor\n", 0) == 0);
    CHECK(r.out.find("\n0.25,") != std::string::npos);
}

TEST_CASE("generator verifies and reports thresholds") {
    const RunResult r = run("gen --problem f0 --d 4 --k 2 --q 3 --case in --verify --seed 5");
    CHECK(r.status == 0);
    CHECK(r.out.find("threshold_high=9\n") != std::string::npos);
    CHECK(r.out.find("case=in\n") != std::string::npos);
}

TEST_CASE("generator writes dataset and sidecar files") {
    const RunResult r = run("gen --problem hh --d 16 --eps 0.25 --gamma 0.125 --t 8 "
                            "--case out --verify --seed 5 --out cli_gen");
    CHECK(r.status == 0);
    std::ifstream data("cli_gen.data"), meta("cli_gen.meta");
    CHECK(data.good());
    CHECK(meta.good());
    std::string line;
    std::getline(meta, line);
    CHECK(line == "problem=hh");
}

TEST_CASE("identical seeds give byte-identical output") {
    const std::string args = "gen --problem lpsample --d 16 --eps 0.25 --gamma 0.125 --t 8 "
                             "--p 0.5 --case in --seed 42";
    CHECK(run(args).out == run(args).out);
    const std::string cr = "code-random --d 16 --eps 0.25 --gamma 0.125 --size 8 --seed 9";
    CHECK(run(cr).out == run(cr).out);
}

TEST_CASE("sample subcommand persists a loadable sample") {
    const std::string f = example_file();
    const RunResult r = run("sample --in " + f + " --out cli_sample.data --t 10 --seed 3");
    CHECK(r.status == 0);
    CHECK(r.out == "t=10 n=5 rate=2\n");
    std::ifstream in("cli_sample.data");
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# sample source_n=5", 0) == 0);
}

TEST_CASE("net build and query round trip") {
    const std::string f = example_file();
    const RunResult b = run("net-build --in " + f + " --alpha 0.3 --p 0 --out cli_net.meta --seed 1");
    CHECK(b.status == 0);
    CHECK(b.out == "net_size=2\n");
    const RunResult q = run("net-query --net cli_net.meta --cols 0,1");
    CHECK(q.status == 0);
    CHECK(q.out == "estimate=4 used_subset=0,1,2 beta=1 distortion=2\n");
}

TEST_CASE("code enumeration prints the dataset format") {
    const RunResult r = run("code --d 4 --k 2");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("6 4 2\n", 0) == 0);
}

TEST_CASE("reduce-alphabet rewrites the file") {
    std::ofstream out("cli_q9.data");
    out << "1 2 9\n5 8\n";
    out.close();
    const RunResult r = run("reduce-alphabet --in cli_q9.data --q-target 3 --out cli_q3.data");
    CHECK(r.status == 0);
    CHECK(r.out == "n=1 d=4 q=3 width=2\n");
    std::ifstream in("cli_q3.data");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "1 4 3");
    CHECK(row == "1 2 2 2");
}
