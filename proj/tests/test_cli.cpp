#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "specfd/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "specfd_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    std::string cmd = std::string(SPECFD_CLI_PATH) + " " + args + " > " +
                      (workdir() / "stdout.txt").string() + " 2> " +
                      (workdir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& s) {
    std::ofstream out(p);
    out << s;
}

const char* kIntervalJson = R"({"vertices": [[0.0], [1.0]], "maximal": [[0, 1]]})";

}  // namespace

TEST_CASE("cli usage and validation failures exit with 1", "[cli]") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("spectrum --model line --m 2 --h 1 --values 0,1") == 1);  // missing --out
    CHECK(run("spectrum --model warp --m 2 --h 1 --values 0,1 --out " +
              (workdir() / "x.csv").string()) == 1);
    CHECK(run("spectrum --model line --m 1 --h 1 --values 0 --out " +
              (workdir() / "x.csv").string()) == 1);
    CHECK(run("converge --model circle --function \"sin(\" --levels 2 --out " +
              (workdir() / "x.csv").string()) == 1);
}

TEST_CASE("cli spectrum matches the closed form", "[cli]") {
    fs::path out = workdir() / "spectrum.csv";
    REQUIRE(run("spectrum --model line --m 2 --h 1 --values 0,1 --out " + out.string()) == 0);
    std::string csv = slurp(out);
    CHECK(csv == "index,value\n0,-1\n1,0\n2,0\n3,1\n");
}

TEST_CASE("cli subdivide and poset roundtrip", "[cli]") {
    fs::path in = workdir() / "interval.json";
    write(in, kIntervalJson);

    fs::path sub = workdir() / "subdivided.json";
    REQUIRE(run("subdivide --in " + in.string() + " --out " + sub.string() + " --levels 2") == 0);
    auto j = nlohmann::json::parse(slurp(sub));
    CHECK(j["vertices"].size() == 5);
    CHECK(j["maximal"].size() == 4);

    fs::path pos = workdir() / "poset.json";
    REQUIRE(run("poset --in " + sub.string() + " --out " + pos.string()) == 0);
    auto pj = nlohmann::json::parse(slurp(pos));
    CHECK(pj["elements"].size() == 9);
    CHECK(pj["covers"].size() == 8);  // each edge covers its two endpoints... reversed

    SECTION("bad json exits with 1") {
        fs::path bad = workdir() / "bad.json";
        write(bad, "{\"vertices\": [[0.0]]}");
        CHECK(run("poset --in " + bad.string() + " --out " + pos.string()) == 1);
    }
    SECTION("degenerate geometry exits with 2") {
        fs::path degen = workdir() / "degenerate.json";
        write(degen,
              R"({"vertices": [[0,0],[1,0],[2,0]], "maximal": [[0,1,2]]})");
        fs::path out = workdir() / "degen_out.json";
        CHECK(run("subdivide --in " + degen.string() + " --out " + out.string()) == 2);
    }
}

TEST_CASE("cli converge produces a first-order table for sin on the circle", "[cli]") {
    fs::path out = workdir() / "converge.csv";
    fs::path summary = workdir() / "converge.json";
    REQUIRE(run("converge --model circle --function \"sin(x)\" --levels 5 --out " +
                out.string() + " --summary " + summary.string()) == 0);
    auto s = nlohmann::json::parse(slurp(summary));
    CHECK(s["passed"].get<bool>());
    double rate = s["rate"].get<double>();
    CHECK(rate >= 0.85);
    CHECK(rate <= 1.15);

    std::string csv = slurp(out);
    CHECK(csv.substr(0, 22) == "level,h,error,rate_cum");

    SECTION("outputs are bitwise reproducible") {
        fs::path out2 = workdir() / "converge2.csv";
        REQUIRE(run("converge --model circle --function \"sin(x)\" --levels 5 --out " +
                    out2.string()) == 0);
        CHECK(slurp(out) == slurp(out2));
    }
}

TEST_CASE("cli approx measures interpolation decay", "[cli]") {
    fs::path in = workdir() / "interval2.json";
    write(in, kIntervalJson);
    fs::path out = workdir() / "approx.csv";
    fs::path summary = workdir() / "approx.json";
    REQUIRE(run("approx --complex " + in.string() +
                " --function \"sin(3*x)\" --levels 5 --out " + out.string() + " --summary " +
                summary.string()) == 0);
    auto s = nlohmann::json::parse(slurp(summary));
    CHECK(s["rate"].get<double>() >= 1.8);
}

TEST_CASE("cli laplacian and hodge emit vertex tables", "[cli]") {
    fs::path lout = workdir() / "lap.csv";
    REQUIRE(run("laplacian --model line --m 3 --h 1 --values 0,1,3 --out " + lout.string()) == 0);
    std::string lcsv = slurp(lout);
    CHECK(lcsv == "vertex_id,re,im\n0,-1,0\n1,-1,0\n2,2,0\n");

    fs::path hout = workdir() / "hodge.csv";
    REQUIRE(run("hodge --model line --m 2 --h 1 --values 0,1 --out " + hout.string()) == 0);
    std::istringstream hcsv(slurp(hout));
    std::string header, line;
    std::getline(hcsv, header);
    CHECK(header == "vertex_id,a_re,a_im,exact_re,exact_im,harmonic_re,harmonic_im");
    REQUIRE(std::getline(hcsv, line));
    std::vector<double> fields;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) fields.push_back(std::stod(tok));
    REQUIRE(fields.size() == 7);
    CHECK(std::abs(fields[3] - (-0.5)) < 1e-12);  // exact part at vertex 0
    CHECK(std::abs(fields[5] - 0.5) < 1e-12);     // harmonic part at vertex 0
}

TEST_CASE("cli model assembles lattice Dirac operators", "[cli]") {
    fs::path spec = workdir() / "lattice.json";
    write(spec, R"json({"dims": [{"m": 3, "h": 0.5, "periodic": true},
                                 {"m": 2, "h": 1.0, "periodic": false}],
                        "weights": ["1/(2 + cos(y))", "1"]})json");
    fs::path out = workdir() / "dirac.csv";
    REQUIRE(run("model --spec " + spec.string() + " --out " + out.string()) == 0);
    std::string csv = slurp(out);
    CHECK(csv.substr(0, 13) == "row,col,re,im");
    CHECK(csv.find('\n') != std::string::npos);

    SECTION("nonpositive weights exit with 2") {
        fs::path bad = workdir() / "bad_lattice.json";
        write(bad, R"({"dims": [{"m": 3, "h": 0.5, "periodic": true}],
                       "weights": ["cos(x) - 2"]})");
        CHECK(run("model --spec " + bad.string() + " --out " + out.string()) == 2);
    }
}

TEST_CASE("cli spectrum from a complex file", "[cli]") {
    fs::path in = workdir() / "interval3.json";
    write(in, kIntervalJson);
    fs::path out = workdir() / "complex_spectrum.csv";
    REQUIRE(run("spectrum --complex " + in.string() + " --function \"x\" --out " +
                out.string()) == 0);
    std::string csv = slurp(out);
    CHECK(csv == "index,value\n0,-1\n1,0\n2,0\n3,1\n");
}
