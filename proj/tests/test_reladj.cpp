#include <relmon/alg.hpp>
#include <relmon/corpus.hpp>

#include <doctest.h>

using namespace relmon;

namespace {

CatPtr cat(const char* name) { return builtin_category(name); }

Functor pt(const CatPtr& c, ObjId x) { return constant_functor(terminal_category(), c, x); }

const Instance& point_bz2()
{
    static const Instance inst = [] {
        for (auto& i : builtin_corpus())
            if (i.name == "PointBZ2") return i;
        throw std::logic_error("PointBZ2 missing");
    }();
    return inst;
}

} // namespace

TEST_SUITE("reladj")
{
    TEST_CASE("identity adjunctions validate")
    {
        for (const char* n : {"Terminal", "Interval", "Split", "BZ2"}) {
            const auto adj = identity_adjunction(cat(n));
            CHECK(check_relative_adjunction(adj).empty());
            CHECK(validate_relative_adjunction(adj.j, adj.l, adj.r, describe(adj)).sharp == adj.sharp);
        }
    }

    TEST_CASE("the empty root: every r has the empty left adjoint")
    {
        const auto E = cat("Indisc2");
        const auto j = empty_functor(empty_category(), E);
        const auto r = pt(E, 1);
        const auto adj = validate_relative_adjunction(j, empty_functor(empty_category(), r.dom), r, {});
        CHECK(adj.sharp.empty());
        const auto found = find_left_relative_adjoint(j, r);
        REQUIRE(found);
        CHECK(found->l.dom->num_objects() == 0);
    }

    TEST_CASE("swapping two parallel transposes breaks naturality")
    {
        const auto adj = identity_adjunction(cat("ParallelPair"));
        auto d = describe(adj);
        auto& a = d.sharp.at({"0", "1", "a"});
        auto& b = d.sharp.at({"0", "1", "b"});
        std::swap(a, b);
        try {
            validate_relative_adjunction(adj.j, adj.l, adj.r, d);
            FAIL("expected a violation");
        } catch (const ValidationError& e) {
            CHECK(e.first().kind == "NaturalityFail");
            CHECK_FALSE(e.first().witness.empty());
        }
    }

    TEST_CASE("adjoint search")
    {
        const auto S = cat("Split");
        const auto id = find_left_relative_adjoint(identity_functor(S), identity_functor(S));
        REQUIRE(id);
        CHECK(id->l == identity_functor(S));
        for (ObjId x = 0; x < S->num_objects(); ++x) CHECK(id->unit(x) == S->identity(x));

        const auto B = cat("BZ2");
        const auto p = find_left_relative_adjoint(pt(B, 0), identity_functor(B));
        REQUIRE(p);
        CHECK(p->l == pt(B, 0));
        CHECK(B->morphism_name(p->unit(0)) == "e");
        const auto rev = find_left_relative_adjoint(pt(B, 0), identity_functor(B), true);
        REQUIRE(rev);
        CHECK(compare_left_adjoints(*p, *rev));

        // The point of Disc2 has no adjoint relative to the identity.
        const auto D = cat("Disc2");
        CHECK_FALSE(find_left_relative_adjoint(identity_functor(D), pt(D, 0)));
    }

    TEST_CASE("pasting identity triangles")
    {
        const auto I = cat("Interval");
        const auto id = identity_adjunction(I);
        const auto rep = paste_adjunction(id, id, identity_functor(I), PasteDirection::Paste);
        CHECK(rep.composite_valid);
        CHECK(rep.composite.sharp == id.sharp);
        REQUIRE(rep.right_morphism);
        CHECK(rep.right_morphism->equivalent);
    }

    TEST_CASE("paste then unpaste over the point of BZ2")
    {
        const auto& outer = point_bz2().adjunctions.at("adj");
        for (const auto& [role, T] : point_bz2().monads) {
            CAPTURE(role);
            const auto algcat = build_algebra_category(T);
            const auto& inner = algcat.adjunction;
            const auto pasted = paste_adjunction(inner, outer, {}, PasteDirection::Paste);
            CHECK(pasted.inner_valid);
            CHECK(pasted.composite_valid);
            const auto back = paste_adjunction(pasted.composite, outer, inner.r, PasteDirection::Unpaste);
            CHECK(back.inner.sharp == inner.sharp);
            CHECK(back.inner.l == inner.l);
        }
    }

    TEST_CASE("unpasting with a wrong factor is a contract error")
    {
        const auto& outer = point_bz2().adjunctions.at("adj");
        const auto B = cat("BZ2");
        CHECK_THROWS_AS(paste_adjunction(outer, outer, pt(B, 0), PasteDirection::Unpaste), ContractError);
    }

    TEST_CASE("right morphisms along the identity")
    {
        const auto S = cat("Split");
        const auto adj = identity_adjunction(S);
        const auto rep = check_right_morphism(adj, identity_functor(S), identity_functor(S));
        CHECK(rep.adjunction);
        CHECK(rep.extension);
        CHECK(rep.equivalent);
    }
}
