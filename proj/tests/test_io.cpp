#include "gk/corpus.hpp"
#include "gk/io.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace gk;
using json = nlohmann::ordered_json;

namespace {
const Instance& find(const std::string& stem) {
    static const auto all = corpus::regression_instances();
    for (const auto& [s, inst] : all)
        if (s == stem) return inst;
    throw std::logic_error("no instance " + stem);
}
}  // namespace

TEST(Io, CommittedInstancesMatchTheCorpus) {
    for (const auto& [stem, inst] : corpus::regression_instances()) {
        Instance loaded = load_instance(std::string(GKFUSE_INSTANCE_DIR) + "/" + stem + ".json");
        EXPECT_EQ(serialize_instance(loaded), serialize_instance(inst)) << stem;
    }
}

TEST(Io, SyntaxErrorReportsPosition) {
    try {
        parse_instance("{\n  \"schema\": \n");
        FAIL();
    } catch (const InstanceError& e) {
        EXPECT_EQ(e.where().find(':') != std::string::npos, true);
        EXPECT_EQ(e.where().substr(0, 2), "3:");
    }
}

TEST(Io, WrongSchemaIsRejected) {
    EXPECT_THROW(parse_instance(R"({"schema": "something-else/1"})"), InstanceError);
}

TEST(Io, DanglingReferenceNamesThePointer) {
    json j = json::parse(serialize_instance(find("d2_product")));
    j["homs"][0]["source"] = "missing";
    try {
        parse_instance(j.dump());
        FAIL();
    } catch (const InstanceError& e) {
        EXPECT_EQ(e.where(), "/homs/0/source");
    }
}

TEST(Io, LabelClashIsRejected) {
    Instance inst;
    inst.g = SemigroupG::trivial();
    inst.add_algebra(diagonal_algebra(2, "A"));
    EXPECT_THROW(inst.add_algebra(diagonal_algebra(3, "A")), InstanceError);
    EXPECT_NO_THROW(inst.add_algebra(diagonal_algebra(2, "A")));
}

TEST(Io, ReportSummaryCounts) {
    RunOptions o;
    RunResult r = run(find("d2_product"), "product", o);
    json rep = json::parse(r.report);
    EXPECT_EQ(rep["schema"], "gkfuse-report/1");
    EXPECT_EQ(rep["summary"]["requests"], 4);
    EXPECT_EQ(rep["summary"]["certified"], 3);
    EXPECT_EQ(rep["summary"]["refused"], 1);
    EXPECT_EQ(rep["summary"]["unexpected"], 0);
    EXPECT_EQ(r.exit_code, 0);
}

TEST(Io, RequestFilterKeepsOrder) {
    RunOptions o;
    o.ids = {"zero_t", "d2xd2"};
    json rep = json::parse(run(find("d2_product"), "product", o).report);
    ASSERT_EQ(rep["results"].size(), 2u);
    EXPECT_EQ(rep["results"][0]["id"], "zero_t");
    EXPECT_EQ(rep["results"][1]["id"], "d2xd2");
    o.ids = {"nope"};
    EXPECT_THROW(run(find("d2_product"), "product", o), InstanceError);
}

TEST(Io, InvalidObjectsFailValidation) {
    RunResult r = run(find("invalid_algebra"), "validate", RunOptions{});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.report.find("not quadratik"), std::string::npos);
}
