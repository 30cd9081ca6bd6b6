#include "corpus_util.hpp"

#include <relmon/io.hpp>

#include <doctest.h>

#include <filesystem>

using namespace relmon;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("relmon_test_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_SUITE("corpus")
{
    TEST_CASE("the builtin corpus validates")
    {
        const auto& all = testing_util::corpus();
        CHECK(all.size() >= 12);
        for (const auto& inst : all) {
            CAPTURE(inst.name);
            CHECK(check_instance(inst).empty());
        }
    }

    TEST_CASE("the corpus covers the documented roots")
    {
        CHECK(is_dense(testing_util::instance("Indisc2-empty-root").functors.at("j")).dense);
        CHECK_FALSE(is_dense(testing_util::instance("Disc2-empty-root").functors.at("j")).dense);
        const auto& split = testing_util::instance("Split");
        CHECK(split.distributors.count("hom"));
    }

    TEST_CASE("deloopings")
    {
        const auto one = delooping({{0}});
        CHECK(one->num_objects() == 1);
        CHECK(one->num_morphisms() == 1);
        CHECK(same_category(delooping({{0, 1}, {1, 0}}, {"e", "s"}), builtin_category("BZ2")));
        try {
            delooping({{0, 1, 2}, {1, 2, 0}, {2, 2, 1}});
            FAIL("expected NotAMonoid");
        } catch (const ContractError& e) {
            CHECK(e.kind() == "NotAMonoid");
        }
        CHECK(builtin_category("BZ2") == builtin_category("BZ2"));
        CHECK_THROWS_AS(builtin_category("Nope"), ContractError);
    }

    TEST_CASE("generation")
    {
        const auto t = generate_category(5, {1, 1, 1000});
        REQUIRE(t);
        CHECK((*t)->num_objects() == 1);
        CHECK((*t)->num_morphisms() == 1);
        const auto e = generate_category(5, {0, 3, 1000});
        REQUIRE(e);
        CHECK((*e)->num_objects() == 0);
        const auto a = generate_category(11, {2, 2, 1000});
        const auto b = generate_category(11, {2, 2, 1000});
        REQUIRE(a);
        REQUIRE(b);
        CHECK(same_category(*a, *b));
        CHECK(oracle::is_category(oracle::table_of((*a)->describe())));
    }

    TEST_CASE("seed 0 with two objects matches the golden file")
    {
        const auto c = generate_category(0, {2, 2, 1000});
        REQUIRE(c);
        const auto golden = io::read_json_file(std::string(RELMON_CORPUS_DIR) + "/golden/generated_seed0_2_2.json");
        auto expected = golden;
        expected.erase("kind");
        CHECK(io::to_json(**c) == expected);
    }

    TEST_CASE("bundles round-trip")
    {
        const auto dir = scratch("bundles");
        for (const auto& inst : testing_util::corpus()) {
            CAPTURE(inst.name);
            save_instance(inst, (dir / inst.name).string());
            CHECK(load_instance((dir / inst.name).string()) == inst);
        }
        fs::remove_all(dir);
    }

    TEST_CASE("the shipped bundles match the builtin corpus")
    {
        for (const auto& inst : testing_util::corpus()) {
            CAPTURE(inst.name);
            CHECK(load_instance(std::string(RELMON_CORPUS_DIR) + "/instances/" + inst.name) == inst);
        }
    }

    TEST_CASE("malformed and dangling input")
    {
        const auto dir = scratch("malformed");
        save_instance(testing_util::instance("Interval"), dir.string());
        const auto file = dir / "category.E.json";
        auto doc = io::read_json_file(file.string());
        doc["composition"]["i;id_1;x"] = "i";
        io::write_json_file(file.string(), doc);
        try {
            load_instance(dir.string());
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.location().find("composition") != std::string::npos);
        }

        doc["composition"].erase("i;id_1;x");
        doc["morphisms"].push_back({{"name", "k"}, {"dom", "0"}, {"cod", "nowhere"}});
        io::write_json_file(file.string(), doc);
        try {
            load_instance(dir.string());
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.first().kind == "DanglingReference");
        }
        fs::remove_all(dir);
        CHECK_THROWS_AS(load_instance(dir.string()), IoError);
    }
}
