#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CAVSTAT_CLI
#error "CAVSTAT_CLI must point at the cavstat executable"
#endif

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CAVSTAT_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("point prints the header and one row") {
    const Run r = run("point");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("sweep_var,value,n,n_cf,g2,g2_cf,g3,dg2,dg3,residual,flags\n", 0) == 0);
    CHECK(r.out.find("5.0683333333333") != std::string::npos);
}

TEST_CASE("kappa = 0 is a clean input error") {
    const Run r = run("point --set kappa_over_Gamma=0");
    CHECK(r.status == 2);
    CHECK(r.out.find("kappa") != std::string::npos);
    CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("bad configuration exits with 2") {
    CHECK(run("point --set no_such_key=1").status == 2);
    CHECK(run("sweep --preset fig9").status == 2);
    CHECK(run("point --order 3").status == 2);
    CHECK(run("").status == 2);
}

TEST_CASE("config file and json output") {
    const std::string path = "cli_test_config.txt";
    {
        std::ofstream f(path);
        f << "# fig1-like sweep\nsweep = kappa_over_Gamma\nstart = 0.1\nstop = 1\npoints = 3\noutputs = n\n";
    }
    const Run csv = run("sweep --config " + path);
    CHECK(csv.status == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);
    const Run json = run("sweep --config " + path + " --format json");
    CHECK(json.status == 0);
    CHECK(json.out.find("\"n_cf\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("sweep output file is reproducible") {
    CHECK(run("sweep --preset fig4 --out cli_a.csv").status == 0);
    CHECK(run("sweep --preset fig4 --workers 1 --out cli_b.csv").status == 0);
    auto slurp = [](const char* p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
    CHECK(slurp("cli_a.csv").size() > 1000);
    std::remove("cli_a.csv");
    std::remove("cli_b.csv");
}

TEST_CASE("help mentions the approximate preset ranges") {
    const Run r = run("--help");
    CHECK(r.status == 0);
    CHECK(r.out.find("approximation") != std::string::npos);
}

}  // TEST_SUITE
