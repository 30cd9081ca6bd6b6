#include "oracle.hpp"

#include <relmon/corpus.hpp>

#include <doctest.h>

using namespace relmon;

namespace {

CatPtr cat(const char* name) { return builtin_category(name); }

bool has_kind(const std::vector<Violation>& vs, const std::string& kind)
{
    for (const auto& v : vs)
        if (v.kind == kind) return true;
    return false;
}

} // namespace

TEST_SUITE("fincat")
{
    TEST_CASE("builtin categories validate and agree with the naive law check")
    {
        for (const char* n : {"Empty", "Terminal", "Interval", "Disc2", "Indisc2", "BZ2", "BM3", "Split", "Span", "Pushout",
                              "ParallelPair", "Idem", "NoReflect"}) {
            CAPTURE(n);
            const auto d = cat(n)->describe();
            CHECK(FinCategory::check(d).empty());
            CHECK(oracle::is_category(oracle::table_of(d)));
        }
    }

    TEST_CASE("BZ2 composition by hand")
    {
        const auto& c = *cat("BZ2");
        const MorId e = c.morphism("e"), s = c.morphism("s");
        CHECK(c.compose(s, s) == e);
        CHECK(c.compose(e, s) == s);
        CHECK(c.compose(s, e) == s);
        CHECK(c.identity(0) == e);
    }

    TEST_CASE("idempotent s;s = s is a monoid, not a mutation of one")
    {
        auto d = cat("BZ2")->describe();
        d.composition[{"s", "s"}] = "s";
        CHECK(FinCategory::check(d).empty());
        CHECK(oracle::is_category(oracle::table_of(d)));
    }

    TEST_CASE("broken unit and associativity are located")
    {
        auto d = cat("BZ2")->describe();
        d.composition[{"e", "s"}] = "e";
        auto vs = FinCategory::check(d);
        REQUIRE_FALSE(vs.empty());
        CHECK(has_kind(vs, "UnitViolation"));
        CHECK_FALSE(vs.front().witness.empty());

        auto m = cat("BM3")->describe();
        m.composition[{"a", "a"}] = "b";
        vs = FinCategory::check(m);
        REQUIRE_FALSE(vs.empty());
        CHECK(has_kind(vs, "NonAssociative"));
        CHECK_THROWS_AS(make_category(m), ValidationError);
    }

    TEST_CASE("functor validation")
    {
        CHECK_NOTHROW(checked(identity_functor(cat("Interval"))));
        CHECK_NOTHROW(checked(constant_functor(cat("Interval"), cat("Terminal"), 0)));
        FunctorDescription swap{{{"0", "1"}, {"1", "0"}}, {{"id_0", "id_0"}, {"id_1", "id_0"}}};
        try {
            validate_functor(swap, cat("Disc2"), cat("Disc2"));
            FAIL("expected a violation");
        } catch (const ValidationError& e) {
            CHECK(has_kind(e.violations(), "BreaksIdentity"));
        }
    }

    TEST_CASE("natural transformations")
    {
        const auto idT = identity_functor(cat("Terminal"));
        CHECK(enumerate_natural_transformations(idT, idT).size() == 1);
        const auto idB = identity_functor(cat("BZ2"));
        CHECK(enumerate_natural_transformations(idB, idB).size() == 2);
        const auto c0 = constant_functor(cat("Disc2"), cat("Disc2"), 0);
        const auto c1 = constant_functor(cat("Disc2"), cat("Disc2"), 1);
        CHECK(enumerate_natural_transformations(c0, c1).empty());
        CHECK(find_natural_isomorphism(idB, idB).has_value());
    }

    TEST_CASE("classification")
    {
        const auto id = classify_functor(identity_functor(cat("Indisc2")));
        CHECK((id.faithful && id.full && id.essentially_surjective && id.conservative && id.is_iso && id.is_equivalence));

        const auto bang = classify_functor(constant_functor(cat("Interval"), cat("Terminal"), 0));
        CHECK(bang.faithful);
        CHECK_FALSE(bang.full); // Interval(1, 0) is empty
        CHECK(bang.essentially_surjective);
        CHECK_FALSE(bang.conservative);
        CHECK_FALSE(bang.witnesses.empty());

        FunctorDescription d{{{"0", "0"}, {"1", "1"}}, {{"id_0", "id_0"}, {"id_1", "id_1"}}};
        const auto incl = classify_functor(validate_functor(d, cat("Disc2"), cat("Indisc2")));
        CHECK(incl.faithful);
        CHECK(incl.essentially_surjective);
        CHECK_FALSE(incl.full);
        CHECK(incl.conservative);
        CHECK_FALSE(incl.is_equivalence);

        // Indisc2 is equivalent to the terminal category but not isomorphic.
        const auto collapse = classify_functor(constant_functor(cat("Indisc2"), cat("Terminal"), 0));
        CHECK(collapse.is_equivalence);
        CHECK_FALSE(collapse.is_iso);
    }

    TEST_CASE("opposites")
    {
        CHECK(same_category(opposite(cat("Terminal")), cat("Terminal")));
        const auto op = opposite(cat("Interval"));
        const MorId i = op->morphism("i");
        CHECK(op->object_name(op->dom(i)) == "1");
        CHECK(op->object_name(op->cod(i)) == "0");
        CHECK(same_category(opposite(cat("BZ2")), cat("BZ2")));
        CHECK_FALSE(same_category(opposite(cat("Split")), cat("Split")));
        CHECK(opposite(opposite(cat("Split"))) == cat("Split"));
    }

    TEST_CASE("functor enumeration matches a count by hand")
    {
        // Interval → Interval: object maps with a morphism between the images.
        CHECK(enumerate_functors(cat("Interval"), cat("Interval")).size() == 3);
        CHECK(enumerate_functors(cat("BZ2"), cat("BZ2")).size() == 2);
        CHECK(enumerate_functors(cat("Empty"), cat("BZ2")).size() == 1);
        CHECK(enumerate_functors(cat("BZ2"), cat("Empty")).empty());
    }
}
