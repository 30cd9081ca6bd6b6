#include "corpus_util.hpp"

#include <relmon/alg.hpp>

#include <doctest.h>

#include <set>

using namespace relmon;
using testing_util::instance;

namespace {

CatPtr cat(const char* name) { return builtin_category(name); }

Functor pt(const CatPtr& c, ObjId x) { return constant_functor(terminal_category(), c, x); }

} // namespace

TEST_SUITE("relmon")
{
    TEST_CASE("trivial monads validate")
    {
        for (const auto& inst : testing_util::corpus()) {
            CAPTURE(inst.name);
            const auto T = trivial_relative_monad(inst.functors.at("j"));
            CHECK(check_relative_monad(T).empty());
            CHECK(validate_relative_monad(T.j, T.t, describe(T)) == T);
        }
    }

    TEST_CASE("a wrong unit on the point of BZ2 breaks the right unit law")
    {
        const auto B = cat("BZ2");
        const auto j = pt(B, 0);
        MonadDescription d;
        d.unit["*"] = "s";
        d.ext[{"*", "*", "e"}] = "e";
        d.ext[{"*", "*", "s"}] = "e";
        try {
            validate_relative_monad(j, j, d);
            FAIL("expected a violation");
        } catch (const ValidationError& e) {
            bool right_unit = false;
            for (const auto& v : e.violations()) right_unit = right_unit || (v.kind == "LawFail" && v.witness.front() == "right_unit");
            CHECK(right_unit);
        }
    }

    TEST_CASE("counts")
    {
        CHECK(enumerate_relative_monads(identity_functor(terminal_category())).size() == 1);
        for (const char* n : {"Disc2", "Indisc2", "BZ2", "Split"}) {
            const auto all = enumerate_relative_monads(empty_functor(empty_category(), cat(n)));
            REQUIRE(all.size() == 1);
            CHECK(all.front() == trivial_relative_monad(empty_functor(empty_category(), cat(n))));
        }
    }

    TEST_CASE("point roots agree with the brute-force oracle and the committed counts")
    {
        const auto committed = testing_util::committed_oracle();
        for (const auto& [name, mul] : oracle::oracle_monoids()) {
            CAPTURE(name);
            const auto j = pt(cat(name.c_str()), 0);
            const auto engine = enumerate_relative_monads(j);
            const auto brute = oracle::point_monads(mul);
            CHECK(engine.size() == brute.size());
            CHECK(committed["monoids"][name]["monad_count"].get<std::size_t>() == engine.size());
            std::set<std::pair<int, std::vector<int>>> a, b;
            for (const auto& T : engine) {
                const auto p = testing_util::as_point_monad(T);
                a.insert({p.eta, p.ext});
                CHECK(oracle::is_relative_monad(T.j, T.t, T.unit, [&] {
                    oracle::ExtMap m;
                    for (int f = 0; f < T.j.cod->num_morphisms(); ++f) m[{0, 0, f}] = T.extend(0, 0, f);
                    return m;
                }()));
            }
            for (const auto& T : brute) b.insert({T.eta, T.ext});
            CHECK(a == b);
        }
        CHECK(enumerate_relative_monads(pt(cat("BZ2"), 0)).size() == 2);
    }

    TEST_CASE("resolutions recover their monads")
    {
        const auto S = cat("Split");
        CHECK(monad_from_adjunction(identity_adjunction(S)) == trivial_relative_monad(identity_functor(S)));

        const auto D = cat("Disc2");
        const auto j = empty_functor(empty_category(), D);
        const auto adj = find_left_relative_adjoint(j, pt(D, 0));
        REQUIRE(adj);
        const auto T = monad_from_adjunction(*adj);
        CHECK(T.unit.empty());
        CHECK(check_relative_monad(T).empty());

        for (const auto& [role, M] : instance("PointBZ2").monads) {
            const auto algcat = build_algebra_category(M);
            CHECK(monad_from_adjunction(algcat.adjunction) == M);
        }
        CHECK(monad_from_adjunction(instance("PointBZ2").adjunctions.at("adj")).unit == std::vector<MorId>{cat("BZ2")->morphism("e")});
    }

    TEST_CASE("precomposing the root")
    {
        const auto B = cat("BZ2");
        const auto T = trivial_relative_monad(identity_functor(B));
        CHECK(precompose_root(T, identity_functor(B)) == T);
        CHECK(precompose_root(T, pt(B, 0)) == trivial_relative_monad(pt(B, 0)));
        const auto E0 = precompose_root(T, empty_functor(empty_category(), B));
        CHECK(E0.unit.empty());
        CHECK(check_relative_monad(E0).empty());
    }
}
