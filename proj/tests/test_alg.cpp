#include "corpus_util.hpp"

#include <relmon/alg.hpp>

#include <doctest.h>

using namespace relmon;
using testing_util::instance;

namespace {

CatPtr cat(const char* name) { return builtin_category(name); }

Functor pt(const CatPtr& c, ObjId x) { return constant_functor(terminal_category(), c, x); }

} // namespace

TEST_SUITE("alg")
{
    TEST_CASE("the trivial monad has one algebra per object")
    {
        for (const char* n : {"Interval", "Split", "BZ2", "Pushout"}) {
            CAPTURE(n);
            const auto E = cat(n);
            const auto T = trivial_relative_monad(identity_functor(E));
            CHECK(enumerate_algebras(T, terminal_category()).size() == static_cast<std::size_t>(E->num_objects()));
            const auto algcat = build_algebra_category(T);
            CHECK(classify_functor(algcat.u).is_iso);
        }
    }

    TEST_CASE("the empty monad has one algebra per object with empty structure")
    {
        for (const char* n : {"Disc2", "Indisc2", "BZ2"}) {
            const auto E = cat(n);
            const auto T = trivial_relative_monad(empty_functor(empty_category(), E));
            const auto algs = enumerate_algebras(T, terminal_category());
            CHECK(algs.size() == static_cast<std::size_t>(E->num_objects()));
            for (const auto& a : algs) CHECK(a.alpha.empty());
            CHECK(classify_functor(build_algebra_category(T).u).is_iso);
        }
    }

    TEST_CASE("point algebras agree with the brute-force oracle")
    {
        const auto committed = testing_util::committed_oracle();
        for (const auto& [name, mul] : oracle::oracle_monoids()) {
            const auto monads = enumerate_relative_monads(pt(cat(name.c_str()), 0));
            const auto& pinned = committed["monoids"][name]["monads"];
            REQUIRE(pinned.size() == monads.size());
            for (std::size_t k = 0; k < monads.size(); ++k) {
                CAPTURE(name);
                CAPTURE(k);
                const auto count = enumerate_algebras(monads[k], terminal_category()).size();
                CHECK(count == oracle::point_algebra_count(mul, testing_util::as_point_monad(monads[k])));
                bool found = false;
                for (const auto& entry : pinned)
                    if (entry["eta"] == monads[k].unit[0] && entry["ext"] == testing_util::as_point_monad(monads[k]).ext)
                        found = entry["point_algebras"].get<std::size_t>() == count;
                CHECK(found);
            }
        }
    }

    TEST_CASE("a perturbed action fails the algebra laws")
    {
        const auto& T = instance("PointBZ2").monads.at("T0");
        auto algs = enumerate_algebras(T, terminal_category());
        REQUIRE_FALSE(algs.empty());
        auto alg = algs.front();
        alg.alpha[0][0] = alg.alpha[0][0] == 0 ? 1 : 0;
        const auto vs = check_algebra(T, alg);
        REQUIRE_FALSE(vs.empty());
        CHECK_FALSE(vs.front().witness.empty());
    }

    TEST_CASE("comparison functors")
    {
        for (const auto& [role, T] : instance("PointBZ2").monads) {
            const auto algcat = build_algebra_category(T);
            CHECK(classify_functor(algcat.u).conservative);
            const auto cmp = comparison_functor(algcat.adjunction, algcat);
            CHECK(cmp.K == identity_functor(algcat.cat));
            CHECK(cmp.unique);
            CHECK(cmp.commutes_with_forgetful);
            CHECK(cmp.commutes_with_free);
        }

        const auto S = cat("Split");
        const auto id = identity_adjunction(S);
        const auto triv = build_algebra_category(monad_from_adjunction(id));
        CHECK(classify_functor(comparison_functor(id, triv).K).is_iso);

        const auto D = cat("Disc2");
        const auto adj = find_left_relative_adjoint(empty_functor(empty_category(), D), pt(D, 0));
        REQUIRE(adj);
        const auto empty = build_algebra_category(monad_from_adjunction(*adj));
        CHECK_FALSE(classify_functor(comparison_functor(*adj, empty).K).is_iso);
    }

    TEST_CASE("the algebra object and its negative controls")
    {
        const auto bounds = default_algebra_object_bounds();
        for (const auto& [role, T] : instance("PointBZ2").monads) {
            const auto algcat = build_algebra_category(T);
            const auto rep = verify_algebra_object(algcat.generic, T, bounds);
            CHECK(rep.precheck);
            CHECK(rep.clause1);
            CHECK(rep.clause2);
            CHECK(rep.passed);
        }

        // Drop the last algebra of the trivial monad on the Interval.
        const auto T = trivial_relative_monad(identity_functor(cat("Interval")));
        const auto algcat = build_algebra_category(T);
        const auto restricted = restrict_algebra(algcat.generic, full_subcategory(algcat.cat, {0}));
        const auto rep = verify_algebra_object(restricted, T, bounds);
        CHECK(rep.precheck);
        CHECK_FALSE(rep.clause1);
        CHECK_FALSE(rep.violations.empty());

        auto perturbed = algcat.generic;
        for (auto& row : perturbed.alpha)
            if (!row.empty()) {
                row[0] = cat("Interval")->morphism("i");
                break;
            }
        CHECK_FALSE(verify_algebra_object(perturbed, T, bounds).precheck);
    }

    TEST_CASE("transport along a free algebra adjunction")
    {
        const auto one = terminal_category();
        const auto interval = cat("Interval");
        std::vector<Distributor> grades = enumerate_distributors(one, one, 2);
        for (auto& p : enumerate_distributors(one, interval, 1)) grades.push_back(p);

        for (const auto& [role, Tp] : instance("PointBZ2").monads) {
            const auto base = build_algebra_category(Tp);
            const auto T = trivial_relative_monad(base.f);
            const auto rep = transport_algebras(base, T, {one, interval}, grades);
            CHECK(rep.passed);
            CHECK(rep.round_trips);
            CHECK(rep.forward_bijective);
            // The trivial f_{T'}-monad transports to T' itself.
            CHECK(postcompose_monad(T, base) == Tp);
            CHECK(enumerate_algebras(T, one).size() == enumerate_algebras(Tp, one).size());
        }

        const auto D = cat("Indisc2");
        const auto base = build_algebra_category(trivial_relative_monad(empty_functor(empty_category(), D)));
        const auto rep = transport_algebras(base, trivial_relative_monad(base.f), {one}, grades);
        CHECK(rep.passed);
        CHECK_THROWS_AS(transport_algebras(base, trivial_relative_monad(identity_functor(D)), {one}, grades), ContractError);
    }
}
