#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'')
            q += "'\\''";
        else
            q += c;
    }
    return q + "'";
}

RunResult run_cli(const std::vector<std::string>& args, bool merge_stderr = false) {
    std::string cmd = shell_quote(g_binary);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    if (WIFEXITED(st)) r.exit_code = WEXITSTATUS(st);
    return r;
}

bool has(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

const char* kSystem23 =
    R"({"masses":["1","1","1"],"coeffs":{"rows":2,"cols":3,"entries":[["log:2","-log:2","0"],["log:3","0","-log:3"]]}})";

} // namespace

TEST_CASE("height of a rational, text and json") {
    RunResult t = run_cli({"height", R"({"type":"rational","value":"3/2"})"});
    CHECK(t.exit_code == 0);
    CHECK(has(t.out, "height = 1.09861228866811"));

    RunResult j = run_cli({"height", "3/2", "--format", "json"});
    CHECK(j.exit_code == 0);
    auto doc = nlohmann::json::parse(j.out);
    std::string lo = doc.at("height").at("lo").get<std::string>();
    std::string hi = doc.at("height").at("hi").get<std::string>();
    CHECK(lo.substr(0, 20) == "1.098612288668109691");
    CHECK(hi.substr(0, 20) == "1.098612288668109691");
    CHECK(doc.at("symbolic").get<std::string>() == "log(3)");
}

TEST_CASE("factored and place-table elements parse") {
    RunResult f = run_cli({"height", R"({"type":"factored","exponents":{"2":"2","3":"-1/2"}})",
                           "--format", "json"});
    CHECK(f.exit_code == 0);
    auto doc = nlohmann::json::parse(f.out);
    CHECK(has(doc.at("symbolic").get<std::string>(), "log(2)"));

    RunResult p = run_cli(
        {"height",
         R"({"type":"place_table","field_degree":1,"entries":[{"place":"inf","local_degree":1,"log_norm":"log:2"},{"place":"p:2","local_degree":1,"log_norm":"-log:2"}]})"});
    CHECK(p.exit_code == 0);
    CHECK(has(p.out, "height = 0.693147180559945"));
}

TEST_CASE("group height of 2 and 3") {
    RunResult r = run_cli({"group-height", R"({"generators":["2","3"]})"});
    CHECK(r.exit_code == 0);
    CHECK(has(r.out, "rank = 2"));
    CHECK(has(r.out, "support = inf p:2 p:3"));
    CHECK(has(r.out, "height = 1.14225001562821"));
}

TEST_CASE("zonotope volume of the unit square plus diagonal") {
    RunResult r =
        run_cli({"zonotope-volume", R"({"rows":2,"cols":3,"entries":[["1","0","1"],["0","1","1"]]})"});
    CHECK(r.exit_code == 0);
    CHECK(has(r.out, "volume = 12"));
}

TEST_CASE("monte carlo cross-check is reproducible for a fixed seed") {
    std::vector<std::string> args = {"zonotope-volume",
                                     R"({"rows":2,"cols":3,"entries":[["1","0","1"],["0","1","1"]]})",
                                     "--mc-samples", "50000", "--seed", "11"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(has(a.out, "monte_carlo = "));
    CHECK(a.out == b.out);
}

TEST_CASE("minima and reduce on the two-generator system") {
    RunResult m = run_cli({"minima", kSystem23});
    CHECK(m.exit_code == 0);
    CHECK(has(m.out, "mu_1 = 1.38629436111989"));
    CHECK(has(m.out, "b_1 = (1, 0)"));
    CHECK(has(m.out, "exhaustive = true"));

    RunResult r = run_cli({"reduce", kSystem23});
    CHECK(r.exit_code == 0);
    CHECK(has(r.out, "integral = 4.56900006251285"));
    CHECK(has(r.out, "certified = true"));
}

TEST_CASE("certify verbs pass on the worked examples") {
    RunResult t4 = run_cli({"certify", "thm4", kSystem23});
    CHECK(t4.exit_code == 0);
    CHECK(has(t4.out, "PASS"));

    RunResult t3 = run_cli({"certify", "thm3", kSystem23});
    CHECK(t3.exit_code == 0);
    CHECK(has(t3.out, "PASS"));

    RunResult t1 = run_cli({"certify", "thm1", R"(["2","3"])"});
    CHECK(t1.exit_code == 0);
    CHECK(has(t1.out, "PASS"));
    CHECK(has(t1.out, "height_product = 0.761500010418809"));

    RunResult t2 = run_cli({"certify", "thm2", R"(["2","3","6"])"});
    CHECK(t2.exit_code == 0);
    CHECK(has(t2.out, "z_1 = (1, 1, -1)"));
    CHECK(has(t2.out, "PASS"));
}

TEST_CASE("certify cor2 over the primes 2 and 3") {
    RunResult r = run_cli({"certify", "cor2", "--primes", "2,3"});
    CHECK(r.exit_code == 0);
    CHECK(has(r.out, "regulator = 0.761500010418809"));
    CHECK(has(r.out, "height = 1.14225001562821"));
    CHECK(has(r.out, "PASS"));

    // FAIL and PASS lines always carry interval endpoints
    CHECK(has(r.out, "in [7.6150001041880"));
}

TEST_CASE("selftest passes") {
    RunResult r = run_cli({"selftest"});
    CHECK(r.exit_code == 0);
    CHECK(has(r.out, "[ok] height of 3/2 equals log 3 exactly"));
    CHECK(!has(r.out, "[FAIL]"));
}

TEST_CASE("json output is byte-identical across runs") {
    std::vector<std::string> args = {"deps", R"(["2","3","6"])", "--format", "json"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto doc = nlohmann::json::parse(a.out);
    CHECK(doc.at("kernel").at("product").get<std::string>() == "1");
    CHECK(doc.at("kernel").at("bound_ok").get<bool>());
    CHECK(doc.at("height_bound_ok").get<bool>());
    CHECK(doc.at("group_bound_ok").get<bool>());
}

TEST_CASE("payloads load from files") {
    const char* path = "cli_payload_group.json";
    {
        std::ofstream f(path);
        f << R"({"generators":["2","3"]})";
    }
    RunResult at = run_cli({"group-height", std::string("@") + path});
    CHECK(at.exit_code == 0);
    CHECK(has(at.out, "height = 1.14225001562821"));
    RunResult bare = run_cli({"group-height", path});
    CHECK(bare.exit_code == 0);
    CHECK(bare.out == at.out);
    std::remove(path);
}

TEST_CASE("clear-denominators substitutes integer powers") {
    RunResult refused = run_cli({"deps", R"([{"type":"factored","exponents":{"2":"1/2"}},"2"])"});
    CHECK(refused.exit_code == 2);

    RunResult ok = run_cli({"deps", R"([{"type":"factored","exponents":{"2":"1/2"}},"2"])",
                            "--clear-denominators"});
    CHECK(ok.exit_code == 0);
    CHECK(has(ok.out, "generator 0 replaced by its power 2"));
    CHECK(has(ok.out, "z_1 = (1, -1)"));
}

TEST_CASE("input errors exit with code 2") {
    CHECK(run_cli({"height", "{not json"}).exit_code == 2);
    CHECK(run_cli({"height", R"({"type":"rational","value":"0"})"}).exit_code == 2);
    CHECK(run_cli({"no-such-verb"}).exit_code == 2);
    CHECK(run_cli({"height"}).exit_code == 2);
    CHECK(run_cli({"certify", "thm2", R"(["2","3"])"}).exit_code == 2);
    CHECK(run_cli({"certify", "cor2"}).exit_code == 2);
    CHECK(run_cli({"certify", "cor2", "--primes", "2,4"}).exit_code == 2);
    CHECK(run_cli({"height", "3/2", "--prec", "8"}).exit_code == 2);
    CHECK(run_cli({"--help"}).exit_code == 0);
}

TEST_CASE("sunit context payload matches the primes shortcut") {
    const char* sunit =
        R"({"field_degree":1,"places":[{"place":"inf","local_degree":1},{"place":"p:2","local_degree":1},{"place":"p:3","local_degree":1}],"unit_log_table":{"rows":2,"cols":3,"entries":[["log:2","-log:2","0"],["log:3","0","-log:3"]]}})";
    RunResult a = run_cli({"certify", "cor2", sunit, "--format", "json"});
    RunResult b = run_cli({"certify", "cor2", "--primes", "2,3", "--format", "json"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <heights-binary> [doctest args]\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
