#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "../tools/cli.hpp"
#include "secrecy/region.hpp"
#include "secrecy/specfile.hpp"

using namespace secrecy;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("secrecy_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        write_text_file(p, content);
        return p;
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

const char* kThm2Channel =
    "x = 4\n"
    "y1 = 2\n"
    "y2 = 4\n"
    "z = 1\n"
    "map.y1 = 0 0 1 1\n"
    "map.y2 = 0 1 2 3\n"
    "map.z = 0 0 0 0\n";

const char* kCascade =
    "u = 2\nv = 2\nv1 = 2\nv2 = 2\n"
    "p_u = 0.375 0.625\n"
    "p_v_u.0 = 0.75 0.25\n"
    "p_v_u.1 = 0.3125 0.6875\n"
    "p_v1v2_v.0 = 0.4375 0.1875 0.25 0.125\n"
    "p_v1v2_v.1 = 0.125 0.3125 0.375 0.1875\n"
    "p_x_v1v2.0 = 0.5 0.25 0.125 0.125\n"
    "p_x_v1v2.1 = 0.125 0.5 0.25 0.125\n"
    "p_x_v1v2.2 = 0.25 0.125 0.5 0.125\n"
    "p_x_v1v2.3 = 0.125 0.25 0.125 0.5\n";

const char* kNoisyChannel =
    "x = 4\ny1 = 2\ny2 = 4\nz = 2\n"
    "row.0 = 0.81 0.09 0 0 0 0 0 0 0.09 0.01 0 0 0 0 0 0\n"
    "row.1 = 0 0 0.09 0.81 0 0 0 0 0 0 0.01 0.09 0 0 0 0\n"
    "row.2 = 0 0 0 0 0.09 0.01 0 0 0 0 0 0 0.81 0.09 0 0\n"
    "row.3 = 0 0 0 0 0 0 0.01 0.09 0 0 0 0 0 0 0.09 0.81\n";

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("channel-check reports determinism and the degradedness verdicts") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    std::string out;
    CHECK(run_cli({"channel-check", spec}, &out) == 0);
    CHECK(out.find("deterministic.y1 = yes") != std::string::npos);
    CHECK(out.find("degraded.X->Y2->Y1->Z = yes") != std::string::npos);
    CHECK(out.find("degraded.X->Y1->Y2->Z = no") != std::string::npos);
}

TEST_CASE("malformed spec files exit with code 2 and name the field") {
    TempDir tmp;
    const std::string spec = tmp.file("bad.txt",
                                      "x = 4\ny1 = 2\ny2 = 4\nz = 1\n"
                                      "map.y1 = 0 0 1\n"  // wrong length
                                      "map.y2 = 0 1 2 3\nmap.z = 0 0 0 0\n");
    std::string err;
    CHECK(run_cli({"channel-check", spec}, nullptr, &err) == 2);
    CHECK(err.find("map.y1") != std::string::npos);
    CHECK(err.find("line 5") != std::string::npos);

    const std::string missing = tmp.sub("nope.txt");
    CHECK(run_cli({"channel-check", missing}, nullptr, &err) == 2);

    // both kernel forms at once is rejected
    const std::string both = tmp.file("both.txt",
                                      "x = 2\ny1 = 2\ny2 = 1\nz = 1\n"
                                      "map.y1 = 0 1\nmap.y2 = 0 0\nmap.z = 0 0\n"
                                      "row.0 = 1 0\nrow.1 = 0 1\n");
    CHECK(run_cli({"channel-check", both}, nullptr, &err) == 2);
    CHECK(err.find("not both") != std::string::npos);
}

TEST_CASE("thm1-search mode writes a searched region") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    std::string out;
    CHECK(run_cli({"region", spec, "--mode", "thm1-search", "--budget", "60", "--sizes",
                   "2,2,2,2", "--seed", "5", "--out", tmp.sub("o")},
                  &out) == 0);
    const RateRegion2D r = region_from_csv(read_text_file(tmp.sub("o") + "/region.csv"));
    CHECK(!r.vertices.empty());
}

TEST_CASE("region thm2 writes the expected vertex file") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    std::string out;
    CHECK(run_cli({"region", spec, "--mode", "thm2", "--grid", "150", "--out", tmp.sub("o")},
                  &out) == 0);
    const RateRegion2D r = region_from_csv(read_text_file(tmp.sub("o") + "/region.csv"));
    REQUIRE(r.vertices.size() == 4);
    CHECK(std::abs(r.vertices[1].x - 1.0) <= 1e-9);
    CHECK(std::abs(r.vertices[3].y - 2.0) <= 1e-9);
    // halfplane sidecar exists
    CHECK(!read_text_file(tmp.sub("o") + "/region.halfplanes.txt").empty());
}

TEST_CASE("region thm2 on a wrong-family channel exits with an explanation") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt",
                                      "x = 4\ny1 = 4\ny2 = 2\nz = 1\n"
                                      "map.y1 = 0 1 2 3\nmap.y2 = 0 0 1 1\nmap.z = 0 0 0 0\n");
    std::string err;
    CHECK(run_cli({"region", spec, "--mode", "thm2", "--out", tmp.sub("o")}, nullptr, &err) == 2);
    CHECK(err.find("degraded") != std::string::npos);
}

TEST_CASE("degenerate cascade produces a CSV holding only the origin") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    const std::string cas = tmp.file("cas.txt",
                                     "u = 1\nv = 1\nv1 = 1\nv2 = 1\n"
                                     "p_u = 1\np_v_u.0 = 1\np_v1v2_v.0 = 1\n"
                                     "p_x_v1v2.0 = 0.25 0.25 0.25 0.25\n");
    CHECK(run_cli({"region", spec, "--mode", "thm1-single-cascade", "--cascade", cas, "--out",
                   tmp.sub("o")}) == 0);
    CHECK(read_text_file(tmp.sub("o") + "/region.csv") == "R1,R2\n0,0\n");
}

TEST_CASE("fm-derive matches the direct route and validates the redundancy remark") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kNoisyChannel);
    const std::string cas = tmp.file("cas.txt", kCascade);
    std::string out;
    CHECK(run_cli({"fm-derive", spec, "--cascade", cas, "--include-redundant", "--out",
                   tmp.sub("fm")},
                  &out) == 0);
    CHECK(out.find("region unchanged: true") != std::string::npos);

    CHECK(run_cli({"region", spec, "--mode", "thm1-single-cascade", "--cascade", cas, "--out",
                   tmp.sub("direct")}) == 0);
    const RateRegion2D derived = region_from_csv(read_text_file(tmp.sub("fm") + "/derived.csv"));
    const RateRegion2D direct = region_from_csv(read_text_file(tmp.sub("direct") + "/region.csv"));
    CHECK(vertex_hausdorff(derived, direct) <= 1e-6);

    const std::string trace = read_text_file(tmp.sub("fm") + "/trace.txt");
    CHECK(!trace.empty());
    CHECK(trace.find("# final variables: R1 R2") != std::string::npos);
}

TEST_CASE("subregions mode prints the containment verdicts") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    std::string out;
    CHECK(run_cli({"region", spec, "--mode", "subregions", "--grid", "150", "--out",
                   tmp.sub("s")},
                  &out) == 0);
    CHECK(out.find("union subset of capacity: PASS") != std::string::npos);
    CHECK(out.find("capacity subset of union (within 0.02): PASS") != std::string::npos);
    CHECK(fs::exists(tmp.sub("s") + "/sub_R1c.csv"));
    CHECK(fs::exists(tmp.sub("s") + "/union.csv"));
}

TEST_CASE("simulate writes deterministic reports") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    // cloud layer only: V = X; receiver 2 decodes both bits, receiver 1 the high bit
    const std::string cas = tmp.file("cas.txt",
                                     "u = 1\nv = 4\nv1 = 4\nv2 = 4\n"
                                     "p_u = 1\n"
                                     "p_v_u.0 = 0.25 0.25 0.25 0.25\n"
                                     "p_v1v2_v.0 = 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
                                     "p_v1v2_v.1 = 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0\n"
                                     "p_v1v2_v.2 = 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0\n"
                                     "p_v1v2_v.3 = 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1\n"
                                     "p_x_v1v2.0 = 1 0 0 0\np_x_v1v2.1 = 1 0 0 0\n"
                                     "p_x_v1v2.2 = 1 0 0 0\np_x_v1v2.3 = 1 0 0 0\n"
                                     "p_x_v1v2.4 = 0 1 0 0\np_x_v1v2.5 = 0 1 0 0\n"
                                     "p_x_v1v2.6 = 0 1 0 0\np_x_v1v2.7 = 0 1 0 0\n"
                                     "p_x_v1v2.8 = 0 0 1 0\np_x_v1v2.9 = 0 0 1 0\n"
                                     "p_x_v1v2.10 = 0 0 1 0\np_x_v1v2.11 = 0 0 1 0\n"
                                     "p_x_v1v2.12 = 0 0 0 1\np_x_v1v2.13 = 0 0 0 1\n"
                                     "p_x_v1v2.14 = 0 0 0 1\np_x_v1v2.15 = 0 0 0 1\n");
    const std::string cfg = tmp.file("cfg.txt",
                                     "n = 8\ntrials = 120\nseed = 9\n"
                                     "eps = 1.5\neps_prime = 0.75\n"
                                     "N_2b = 4\n");
    std::string out1;
    CHECK(run_cli({"simulate", spec, "--cascade", cas, "--config", cfg, "--out", tmp.sub("a")},
                  &out1) == 0);
    std::string out2;
    CHECK(run_cli({"simulate", spec, "--cascade", cas, "--config", cfg, "--out", tmp.sub("b")},
                  &out2) == 0);
    CHECK(read_text_file(tmp.sub("a") + "/report.txt") ==
          read_text_file(tmp.sub("b") + "/report.txt"));
    CHECK(out1.find("leak1_bits = 0") != std::string::npos);  // Z constant
    CHECK(fs::exists(tmp.sub("a") + "/events.csv"));

    // flag overrides change the outcome deterministically
    std::string out3;
    CHECK(run_cli({"simulate", spec, "--cascade", cas, "--config", cfg, "--seed", "10", "--out",
                   tmp.sub("c")},
                  &out3) == 0);
    CHECK(read_text_file(tmp.sub("a") + "/report.txt") !=
          read_text_file(tmp.sub("c") + "/report.txt"));
}

TEST_CASE("unknown mode and missing arguments exit with code 2") {
    TempDir tmp;
    const std::string spec = tmp.file("ch.txt", kThm2Channel);
    std::string err;
    CHECK(run_cli({"region", spec, "--mode", "bogus", "--out", tmp.sub("o")}, nullptr, &err) == 2);
    CHECK(err.find("bogus") != std::string::npos);
    CHECK(run_cli({"region", spec}, nullptr, &err) == 2);
    CHECK(run_cli({"fm-derive", spec}, nullptr, &err) == 2);
}

TEST_CASE("help output lists the subcommands") {
    std::string out;
    CHECK(run_cli({"--help"}, &out) == 0);
    CHECK(out.find("channel-check") != std::string::npos);
    CHECK(out.find("fm-derive") != std::string::npos);
    CHECK(out.find("simulate") != std::string::npos);
}
