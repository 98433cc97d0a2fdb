#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "delpezzo/io.hpp"
#include "delpezzo/suites.hpp"

using namespace delpezzo;
using nlohmann::json;

TEST(Io, RationalsRoundTrip) {
    EXPECT_EQ(io::rat_to_json(Rat(5)), json(5));
    EXPECT_EQ(io::rat_to_json(Rat(-3, 4)), json("-3/4"));
    EXPECT_EQ(io::rat_from_json(json("-3/4")), Rat(-3, 4));
    EXPECT_EQ(io::rat_from_json(json(12)), Rat(12));
    EXPECT_THROW(io::rat_from_json(json(0.5)), InputError);
    EXPECT_THROW(io::rat_from_json(json("0.5")), InputError);
    EXPECT_THROW(io::rat_from_json(json::array()), InputError);
}

TEST(Io, ConfigRoundTrip) {
    const auto cfg = random_config(6, 3, 20);
    const json j = io::config_to_json(cfg);
    EXPECT_EQ(j["r"], 6);
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(io::config_from_json(j), cfg);

    const auto path = std::filesystem::temp_directory_path() / "delpezzo_io_roundtrip.json";
    io::save_config(cfg, path.string());
    EXPECT_EQ(io::load_config(path.string()), cfg);
    std::filesystem::remove(path);
}

TEST(Io, ConfigAcceptsFractionsAndRejectsFloats) {
    const json ok = json::parse(R"({"r": 3, "points": [[1, 0, 0], ["1/2", 1, 0], [0, 0, "3"]]})");
    const auto cfg = io::config_from_json(ok);
    EXPECT_EQ(cfg.point(2)[1], Rat(2));
    const json bad = json::parse(R"({"r": 3, "points": [[1, 0, 0], [0.5, 1, 0], [0, 0, 1]]})");
    EXPECT_THROW(io::config_from_json(bad), InputError);
    EXPECT_THROW(io::config_from_json(json::parse(R"({"points": []})")), InputError);
    EXPECT_THROW(io::config_from_json(json::parse(R"({"r": 3, "points": [[1, 0]]})")), InputError);
    EXPECT_THROW(io::load_config("/nonexistent/cfg.json"), InputError);
}

TEST(Io, ClassRoundTrip) {
    const PicClass c(5, {2, -1, -1, 0, -1, -1});
    EXPECT_EQ(io::class_from_json(io::class_to_json(c)), c);
    EXPECT_THROW(io::class_from_json(json::parse("[1, 2]")), InputError);
    EXPECT_THROW(io::class_from_json(json::parse("[1, 2, 0.5, 0]")), InputError);
}

TEST(Io, RelationSerialization) {
    const auto gs = build_generators(random_config(4, 1, 20));
    const auto rels = ruling_relations(rulings(4)[0], gs);
    ASSERT_EQ(rels.size(), 1u);
    const json j = io::relation_to_json(rels[0], gs);
    EXPECT_EQ(io::class_from_json(j["ruling"]), rulings(4)[0].cls);
    ASSERT_EQ(j["terms"].size(), 3u);
    for (const auto& t : j["terms"]) {
        ASSERT_EQ(t["pair"].size(), 2u);
        const PicClass sum = io::class_from_json(t["pair"][0]) + io::class_from_json(t["pair"][1]);
        EXPECT_EQ(sum, rulings(4)[0].cls);
        EXPECT_NO_THROW(parse_rat(t["c"].get<std::string>()));
    }
}

TEST(Io, ReportsAreDeterministic) {
    const auto cfg = random_config(5, 7, 20);
    const auto a = suites::run_suite("all", 5, cfg, 7);
    const auto b = suites::run_suite("all", 5, cfg, 7);
    EXPECT_TRUE(a.all_pass()) << a.to_table();
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    EXPECT_EQ(a.to_table(), b.to_table());
}

TEST(Io, FailedCheckIsReported) {
    suites::RunReport rep;
    rep.add("ok", 1, 1);
    rep.add("broken", 2, 3);
    EXPECT_FALSE(rep.all_pass());
    ASSERT_NE(rep.first_failure(), nullptr);
    EXPECT_EQ(rep.first_failure()->name, "broken");
    EXPECT_NE(rep.to_table().find("FAIL  broken"), std::string::npos);
}
