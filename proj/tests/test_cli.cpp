#include <relmon/cli.hpp>
#include <relmon/io.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace relmon;
namespace fs = std::filesystem;

namespace {

std::string fx(const std::string& name) { return std::string(RELMON_FIXTURES) + "/" + name; }

struct Run {
    ExitStatus status;
    std::string out, err;
    io::Json report;
};

Run run(std::vector<std::string> args)
{
    const auto report = (fs::temp_directory_path() / "relmon_cli_test.json").string();
    fs::remove(report);
    args.push_back("--report");
    args.push_back(report);
    std::ostringstream out, err;
    Run r{run_cli(args, out, err), out.str(), err.str(), {}};
    r.report = io::read_json_file(report);
    return r;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("identity is strictly monadic")
    {
        const auto r = run({"monadic", "--j", fx("id_E.json"), "--r", fx("id_E.json"), "--strict"});
        CHECK(r.status == ExitStatus::Pass);
        CHECK(r.report["schema"] == 1);
        CHECK(r.report["exit_code"] == 0);
        CHECK(r.report["command"] == "monadic");
    }

    TEST_CASE("a non-invertible functor over the empty root")
    {
        const auto r = run({"monadic", "--j", fx("empty_root.json"), "--r", fx("noniso.json")});
        CHECK(r.status == ExitStatus::Negative);
        CHECK(r.out.find("comparison not iso") != std::string::npos);
        CHECK(run({"monadic", "--j", fx("empty_root.json"), "--r", fx("swap.json")}).status == ExitStatus::Pass);
        const auto co = run({"monadic", "--co", "--j", fx("empty_root.json"), "--r", fx("noniso.json")});
        CHECK(co.status == ExitStatus::Negative);
        CHECK(co.report["verdict"] == r.report["verdict"]);
    }

    TEST_CASE("the density exhibit audits cleanly without being a discrepancy")
    {
        const auto r = run({"monadic", "--audit", "--shapes", "3", "--cap", "1", "--j", fx("empty_root.json"), "--r", fx("noniso.json")});
        CHECK(r.status == ExitStatus::Negative);
        CHECK(r.report["details"]["audit"]["failed"] == 0);
        CHECK(r.report["details"]["audit"]["dense"] == false);
    }

    TEST_CASE("monads, algebras, adjoints and density")
    {
        CHECK(run({"monad", "validate", fx("monad_point_bz2.json")}).status == ExitStatus::Pass);
        const auto bad = run({"monad", "validate", fx("bad_monad.json")});
        CHECK(bad.status == ExitStatus::Negative);
        CHECK(bad.report["witnesses"][0]["witness"][0] == "right_unit");
        const auto en = run({"monad", "enumerate", "--j", fx("point_bz2.json")});
        CHECK(en.status == ExitStatus::Pass);
        CHECK(en.report["command"] == "monad enumerate");
        CHECK(run({"algebras", "--monad", fx("monad_point_bz2.json")}).status == ExitStatus::Pass);
        CHECK(run({"adjoint", "--j", fx("point_bz2.json"), "--r", fx("id_bz2.json")}).status == ExitStatus::Pass);
        CHECK(run({"density", "--j", fx("point_bz2.json")}).status == ExitStatus::Negative);
        CHECK(run({"density", "--j", fx("id_E.json")}).status == ExitStatus::Pass);
        CHECK(run({"paste", "--inner", fx("adj_point_bz2.json"), "--outer", fx("adj_point_bz2.json"), "--direction", "paste"}).status ==
              ExitStatus::Pass);
        CHECK(run({"composite", "--j", fx("id_bz2.json"), "--rprime", fx("id_bz2.json"), "--r", fx("id_bz2.json")}).status ==
              ExitStatus::Pass);
    }

    TEST_CASE("validation verdicts")
    {
        CHECK(run({"validate", fx("E.json")}).status == ExitStatus::Pass);
        const auto d = run({"validate", fx("dangling.json")});
        CHECK(d.status == ExitStatus::Negative);
        CHECK(d.report["witnesses"][0]["kind"] == "DanglingReference");
        CHECK(run({"validate", std::string(RELMON_CORPUS_DIR) + "/instances/Split"}).status == ExitStatus::Pass);
    }

    TEST_CASE("input errors embed the error in the report")
    {
        const auto m = run({"validate", fx("malformed.json")});
        CHECK(m.status == ExitStatus::InputError);
        CHECK(m.report["error"]["type"] == "parse");
        CHECK(m.report["error"]["location"].get<std::string>().find("composition") != std::string::npos);
        CHECK(run({"monadic", "--j", fx("not_json.json"), "--r", fx("id_E.json")}).status == ExitStatus::InputError);
        CHECK(run({"monadic", "--j", fx("missing.json"), "--r", fx("id_E.json")}).report["error"]["type"] == "io");
        CHECK(run({"monadic", "--j", fx("malformed.json"), "--r", fx("id_E.json")}).status == ExitStatus::InputError);
        const auto usage = run({"monadic", "--j", fx("id_E.json")});
        CHECK(usage.status == ExitStatus::InputError);
        CHECK(usage.report["error"]["type"] == "usage");
        CHECK(run({"frobnicate"}).status == ExitStatus::InputError);
        CHECK(run({"monadic", "--audit", "--co", "--j", fx("id_E.json"), "--r", fx("id_E.json")}).status == ExitStatus::InputError);
        CHECK(run({"monadic", "--j", fx("empty_root.json"), "--r", fx("id_E.json")}).status == ExitStatus::InputError);
    }

    TEST_CASE("generation is pinned per seed and reports exhaustion")
    {
        const auto a = run({"generate", "--seed", "0", "--objects", "2", "--max-hom", "2"});
        const auto b = run({"generate", "--seed", "0", "--objects", "2", "--max-hom", "2"});
        CHECK(a.status == ExitStatus::Pass);
        CHECK(a.report == b.report);
        CHECK(run({"generate", "--seed", "1", "--objects", "4", "--max-hom", "4"}).status == ExitStatus::Inconclusive);
    }

    TEST_CASE("the budget variable caps enumerations")
    {
        ::setenv("RELMON_BUDGET", "5", 1);
        const auto r = run({"monad", "enumerate", "--j", fx("id_E.json")});
        ::unsetenv("RELMON_BUDGET");
        CHECK(r.status == ExitStatus::Budget);
        CHECK(r.report["error"]["type"] == "budget");
        CHECK(r.report["exit_code"] == 4);
    }

    TEST_CASE("reports are byte-identical across runs")
    {
        const auto dir = fs::temp_directory_path();
        std::ostringstream o1, e1, o2, e2;
        const std::vector<std::string> args{"monadic", "--j", fx("id_terminal.json"), "--r", fx("bang_interval.json"), "--audit",
                                            "--shapes", "2", "--cap", "1", "--report"};
        auto a1 = args, a2 = args;
        a1.push_back((dir / "relmon_det1.json").string());
        a2.push_back((dir / "relmon_det2.json").string());
        CHECK(run_cli(a1, o1, e1) == run_cli(a2, o2, e2));
        CHECK(o1.str() == o2.str());
        std::ifstream f1(dir / "relmon_det1.json"), f2(dir / "relmon_det2.json");
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        CHECK(s1.str() == s2.str());
        CHECK_FALSE(s1.str().empty());
    }
}
