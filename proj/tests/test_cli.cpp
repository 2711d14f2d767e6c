#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "kdvtau");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = kdvtau::tools::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    std::string l;
    while (std::getline(is, l))
        v.push_back(l);
    return v;
}

std::filesystem::path scratch(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("kdvtau_cli_test_" + name);
}

} // namespace

TEST_CASE("tau command") {
    auto r = run({"tau", "3,2"});
    CHECK(r.code == 0);
    CHECK(r.out == "29/5760 g=2\n");
    CHECK(run({"tau", "1"}).out == "1/24 g=1\n");
    auto z = run({"tau", "2,2"});
    CHECK(z.code == 0);
    CHECK(z.out.rfind("0 ", 0) == 0);
    CHECK(run({"--format", "json", "tau", "3,2"}).out ==
          "{\"indices\":[3,2],\"genus\":2,\"value\":{\"num\":29,\"den\":5760}}\n");
    CHECK(run({"tau", "2,30", "--format", "csv"}).out ==
          "k1,k2,g,numerator,denominator\n2,30,11,53,12148128371129859440640\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"tau", "3,x"}).code == 2);
    CHECK(run({"tau", "3,-1"}).code == 2);
    CHECK(run({"tau", "3,,2"}).code == 2);
    CHECK(run({"tau"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"table", "1", "4"}).code == 2);
    CHECK(run({"--format", "xml", "tau", "1"}).code == 2);
    CHECK(run({"kappa", "0,1", "2"}).code == 2);
    CHECK(run({"wp", "0", "2"}).code == 2);
    CHECK(run({"--depth", "2", "table", "2", "10"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("table command formats") {
    auto csv = run({"--format", "csv", "table", "2", "30"});
    REQUIRE(csv.code == 0);
    auto rows = lines(csv.out);
    CHECK(rows.front() == "k1,k2,g,numerator,denominator");
    CHECK(rows.size() > 121);
    CHECK(std::find(rows.begin(), rows.end(), "2,3,2,29,5760") != rows.end());
    CHECK(csv.out.back() == '\n');

    auto json = run({"--format", "json", "table", "4", "9"});
    REQUIRE(json.code == 0);
    CHECK(json.out.find("{\"indices\":[2,2,2,4],\"genus\":3,\"value\":{\"num\":53,\"den\":1152}}") !=
          std::string::npos);

    auto big = run({"--format", "json", "table", "2", "30"});
    CHECK(big.out.find("{\"indices\":[2,30],\"genus\":11,\"value\":{\"num\":53,\"den\":"
                       "12148128371129859440640}}") != std::string::npos);

    auto empty = run({"--format", "csv", "table", "2", "0"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "k1,k2,g,numerator,denominator\n");
    CHECK(run({"--format", "json", "table", "2", "0"}).out == "[]\n");
}

TEST_CASE("csv and json tables carry the same values") {
    auto csv = run({"--format", "csv", "table", "3", "9"});
    auto json = run({"--format", "json", "table", "3", "9"});
    REQUIRE(csv.code == 0);
    REQUIRE(json.code == 0);
    auto parsed = nlohmann::json::parse(json.out);
    auto rows = lines(csv.out);
    REQUIRE(parsed.size() + 1 == rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto &e = parsed[i];
        REQUIRE(e["value"]["num"].is_number_integer());
        REQUIRE(e["value"]["den"].is_number_integer());
        std::ostringstream os;
        os << e["indices"][0] << "," << e["indices"][1] << "," << e["indices"][2] << ","
           << e["genus"] << "," << e["value"]["num"] << "," << e["value"]["den"];
        CHECK(os.str() == rows[i + 1]);
    }
}

TEST_CASE("table output is deterministic across workers") {
    auto base = run({"--format", "csv", "table", "3", "12"}).out;
    CHECK(run({"--format", "csv", "table", "3", "12"}).out == base);
    CHECK(run({"--workers", "4", "--format", "csv", "table", "3", "12"}).out == base);
    CHECK(run({"--workers", "8", "--format", "csv", "table", "3", "12"}).out == base);
    auto j1 = run({"--format", "json", "table", "4", "6"}).out;
    CHECK(run({"--format", "json", "--workers", "8", "table", "4", "6"}).out == j1);
}

TEST_CASE("depth and verification flags") {
    auto deep = run({"--depth", "40", "--format", "csv", "table", "2", "10"});
    CHECK(deep.code == 0);
    CHECK(deep.out == run({"--format", "csv", "table", "2", "10"}).out);
    auto v = run({"--verify", "table", "2", "10"});
    CHECK(v.code == 0);
    CHECK(v.err.find("0 mismatches") != std::string::npos);
}

TEST_CASE("output files") {
    auto path = scratch("table.csv");
    std::filesystem::remove(path);
    auto r = run({"--format", "csv", "--out", path.string(), "table", "2", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str() == run({"--format", "csv", "table", "2", "6"}).out);
    std::filesystem::remove(path);

    auto bad = run({"--out", "/nonexistent-dir/x/y.csv", "tau", "1"});
    CHECK(bad.code == 1);
    CHECK(!bad.err.empty());
}

TEST_CASE("kappa command") {
    auto r = run({"kappa", "1,1", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("s-coefficient=3781/2903040") != std::string::npos);
    CHECK(run({"kappa", "3", ""}).out.find("= 1/1152 g=2") != std::string::npos);
    // 3 (72*8 - 132*4 + 95*2 - 35) / (7!! 24^2 2!) = 29/5760
    CHECK(run({"kappa", "2", "2"}).out.find("= 29/5760 g=2") != std::string::npos);
    auto j = nlohmann::json::parse(run({"--format", "json", "kappa", "1,1", "2"}).out);
    CHECK(j["value"]["num"] == 139);
    CHECK(j["value"]["den"] == 5760);
    CHECK(j["s_coefficient"]["den"] == 11520);
}

TEST_CASE("wp command") {
    auto j = nlohmann::json::parse(run({"--format", "json", "wp", "1", "2"}).out);
    bool found = false;
    for (const auto &e : j["entries"])
        if (e["d"] == 2 && e["indices"] == nlohmann::json::array({0, 0})) {
            CHECK(e["w"]["num"] == 1);
            CHECK(e["w"]["den"] == 16);
            found = true;
        }
    CHECK(found);
    auto w03 = nlohmann::json::parse(run({"--format", "json", "wp", "0", "3"}).out);
    REQUIRE(w03["entries"].size() == 1);
    CHECK(w03["entries"][0]["value"]["num"] == 1);
    CHECK(run({"--format", "csv", "wp", "2", "2"}).code == 0);
}

TEST_CASE("wave command") {
    auto r = run({"wave", "1", "--order", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(-1/24)*z^-1 + (77/576)*z^-4") != std::string::npos);
    auto j = nlohmann::json::parse(run({"--format", "json", "wave", "1,1"}).out);
    CHECK(j["lambda"] == nlohmann::json::array({1, 1}));
    CHECK(j["B"]["q"].size() == 3);
    CHECK(run({"wave", ""}).code == 0);
    CHECK(run({"wave", "2,0"}).code == 2);
}

TEST_CASE("selftest command") {
    auto ok = run({"selftest"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    auto bad = run({"selftest", "--corrupt-c1"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL faber-zagier wronskian") != std::string::npos);
    auto shallow = run({"selftest", "--shallow"});
    CHECK(shallow.code == 1);
    CHECK(shallow.out.find("FAIL doubling check") != std::string::npos);
}
