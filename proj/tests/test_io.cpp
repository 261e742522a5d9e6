#include "perverse/builtins.hpp"
#include "perverse/ffs_io.hpp"
#include "perverse/gm_chains.hpp"

#include <catch_amalgamated.hpp>

#include <json.hpp>

using namespace perverse;

namespace {

std::string message_of(const std::string& text)
{
    try {
        io::parse_presentation(text);
    } catch (const io::ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("format A round trip is byte identical", "[io]")
{
    for (const auto& name : builtins::catalog()) {
        INFO(name);
        ffs::FilteredFaceSet k = builtins::build(name);
        std::string a = io::to_json(k);
        ffs::FilteredFaceSet back = io::parse_ffs(a);
        CHECK(io::to_json(back) == a);
        CHECK(back.size() == k.size());
        CHECK(io::to_json(back.presentation()) == a);
    }
}

TEST_CASE("format A fields", "[io]")
{
    auto j = nlohmann::json::parse(io::to_json(builtins::build("cone-s0")));
    CHECK(j["format"] == "ffs-a/1");
    CHECK(j["n"] == 1);
    REQUIRE(j["simplices"].size() == 5);
    for (const auto& s : j["simplices"]) {
        CHECK(s.contains("id"));
        CHECK(s["profile"].size() == 2);
        int dim = -1;
        for (int x : s["profile"]) dim += x + 1;
        CHECK(s["faces"].size() == static_cast<std::size_t>(dim == 0 ? 0 : dim + 1));
    }
}

TEST_CASE("format B", "[io]")
{
    const char* b = R"({"format": "ffs-b/1", "n": 1,
        "vertices": {"c": 0, "0": 1, "1": 1, "2": 1},
        "facets": [["c", "0", "1"], ["c", "1", "2"], ["c", "0", "2"]]})";
    ffs::FilteredFaceSet k = io::parse_ffs(b);
    CHECK(k.size() == 13);
    CHECK(gm::ordinary_homology(k, linalg::Ring::Z).betti == std::vector<std::size_t>{1, 0, 0});
    ffs::FilteredFaceSet again = io::parse_ffs(io::to_json(k));
    CHECK(io::to_json(again) == io::to_json(k));

    // shape alone selects the format
    const char* shape = R"({"n": 1, "vertices": {"c": 0, "v": 1}, "facets": [["c", "v"]]})";
    CHECK(io::parse_ffs(shape).size() == 3);
}

TEST_CASE("malformed input", "[io]")
{
    std::string good = io::to_json(builtins::build("circle"));
    CHECK_THROWS_AS(io::parse_presentation(good.substr(0, good.size() / 2)), io::ParseError);
    CHECK_THROWS_AS(io::parse_presentation("[]"), io::ParseError);
    CHECK_THROWS_AS(io::parse_presentation(R"({"format": "ffs-z/9", "n": 0, "simplices": []})"), io::ParseError);
    CHECK_THROWS_AS(io::parse_presentation(R"({"simplices": []})"), io::ParseError);

    std::string m = message_of(R"({"n": 0, "simplices": [{"id": "a", "profile": ["x"], "faces": []}]})");
    CHECK(m.find("simplices[0].profile[0]") != std::string::npos);
    m = message_of(R"({"n": 0, "simplices": [{"id": "a", "profile": [0]}]})");
    CHECK(m.find("faces") != std::string::npos);
}

TEST_CASE("parse_ffs validates", "[io]")
{
    auto j = nlohmann::json::parse(io::to_json(builtins::build("circle")));
    j["simplices"].back()["faces"][0] = "nowhere";
    CHECK_THROWS_AS(io::parse_ffs(j.dump()), ffs::InvalidFfs);
    CHECK_NOTHROW(io::parse_presentation(j.dump()));

    auto e = nlohmann::json::parse(R"({"n": 1, "simplices": [{"id": "c", "profile": [0, -1], "faces": []}]})");
    try {
        io::parse_ffs(e.dump());
        FAIL("empty regular part accepted");
    } catch (const ffs::InvalidFfs& err) {
        CHECK_FALSE(err.report().ok());
    }
}

TEST_CASE("homology output", "[io]")
{
    auto h = gm::ordinary_homology(builtins::build("circle"), linalg::Ring::Z);
    auto j = nlohmann::json::parse(io::homology_to_json(h));
    CHECK(j["betti"] == nlohmann::json::array({1, 1}));
    CHECK(j["torsion"].size() == 2);
    std::string t = io::homology_to_table(h);
    CHECK(t.find("degree") != std::string::npos);
    CHECK(t.find("rank") != std::string::npos);
}
