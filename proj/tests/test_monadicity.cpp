#include "corpus_util.hpp"

#include <relmon/monadicity.hpp>

#include <doctest.h>

using namespace relmon;
using testing_util::instance;

namespace {

CatPtr cat(const char* name) { return builtin_category(name); }

Functor pt(const CatPtr& c, ObjId x) { return constant_functor(terminal_category(), c, x); }

Functor none(const CatPtr& c) { return empty_functor(empty_category(), c); }

const ShapeFamily& small_family()
{
    static const ShapeFamily f = shape_family(3, 1);
    return f;
}

} // namespace

TEST_SUITE("monadicity")
{
    TEST_CASE("identities are strictly monadic")
    {
        for (const char* n : {"Terminal", "Split", "BZ2"}) {
            const auto id = identity_functor(cat(n));
            const auto rep = decide_monadicity(id, id, MonadicityMode::Strict);
            CHECK(rep.monadic());
            REQUIRE(rep.comparison);
            CHECK(classify_functor(rep.comparison->K).is_iso);
        }
    }

    TEST_CASE("the empty root: monadic exactly when r is invertible")
    {
        const auto D = cat("Disc2");
        const auto swap = instance("Disc2-empty-root").functors.at("r_swap");
        CHECK(decide_monadicity(none(D), swap, MonadicityMode::Strict).monadic());
        const auto point = decide_monadicity(none(D), pt(D, 0), MonadicityMode::Strict);
        CHECK(point.verdict == Verdict::NotMonadic);
        REQUIRE_FALSE(point.witnesses.empty());
        CHECK(point.witnesses.front().message == "comparison not iso");

        // Indisc2 ≃ Terminal, so the point is an equivalence but not an isomorphism.
        const auto I = cat("Indisc2");
        CHECK_FALSE(decide_monadicity(none(I), pt(I, 0), MonadicityMode::Strict).monadic());
        CHECK(decide_monadicity(none(I), pt(I, 0), MonadicityMode::NonStrict).monadic());
    }

    TEST_CASE("forgetful functors of algebra categories are strictly monadic and audit cleanly")
    {
        for (const auto& [role, T] : instance("PointBZ2").monads) {
            const auto algcat = build_algebra_category(T);
            CHECK(decide_monadicity(T.j, algcat.u, MonadicityMode::Strict).monadic());
        }
        const auto S = cat("Split");
        const auto algcat = build_algebra_category(trivial_relative_monad(identity_functor(S)));
        const auto audit = creation_audit(identity_functor(S), algcat.u, small_family(), MonadicityMode::Strict);
        CHECK(audit.dense);
        CHECK(audit.verdict == Verdict::Monadic);
        CHECK(audit.failed == 0);
        CHECK(audit.passed > 0);
        CHECK(audit.extension_ok);
        CHECK(audit.retraction_ok);
        CHECK(audit.discrepancies.empty());
    }

    TEST_CASE("a non-monadic right adjoint leaves a witness or flags the bound")
    {
        const auto bang = constant_functor(cat("Interval"), terminal_category(), 0);
        const auto dec = decide_monadicity(identity_functor(terminal_category()), bang, MonadicityMode::Strict);
        REQUIRE(dec.adjunction);
        CHECK(dec.verdict == Verdict::NotMonadic);
        const auto audit = creation_audit(identity_functor(terminal_category()), bang, small_family(), MonadicityMode::Strict);
        CHECK((audit.witness_found || audit.inconclusive));
        CHECK(audit.discrepancies.empty());
    }

    TEST_CASE("density is necessary: the point of Disc2 creates colimits but is not monadic")
    {
        const auto D = cat("Disc2");
        const auto audit = creation_audit(none(D), pt(D, 0), small_family(), MonadicityMode::Strict);
        CHECK_FALSE(audit.dense);
        CHECK(audit.verdict == Verdict::NotMonadic);
        CHECK(audit.failed == 0);
        CHECK(audit.discrepancies.empty());
    }

    TEST_CASE("comonadicity through the opposites")
    {
        for (const auto& inst : testing_util::corpus())
            for (const auto& [role, r] : inst.functors) {
                if (role.front() != 'r') continue;
                const auto& j = inst.functors.at("j");
                CAPTURE(inst.name);
                for (auto mode : {MonadicityMode::Strict, MonadicityMode::NonStrict})
                    CHECK(decide_monadicity(opposite(j), opposite(r), mode, true).verdict == decide_monadicity(j, r, mode).verdict);
            }
    }

    TEST_CASE("composite monadicity")
    {
        const auto S = cat("Split");
        const auto id = identity_functor(S);
        const auto both = decide_composite_monadicity(id, id, id, MonadicityMode::Strict);
        CHECK(both.holds);
        CHECK(both.left.monadic());
        CHECK(both.right.monadic());

        const auto& Tp = instance("PointBZ2").monads.at("T0");
        const auto base = build_algebra_category(Tp);
        const auto monads = enumerate_relative_monads(base.f);
        REQUIRE_FALSE(monads.empty());
        for (const auto& Sm : monads) {
            const auto upper = build_algebra_category(Sm);
            for (auto mode : {MonadicityMode::Strict, MonadicityMode::NonStrict}) {
                const auto rep = decide_composite_monadicity(Tp.j, base.u, upper.u, mode);
                CHECK(rep.holds);
                CHECK(rep.left.monadic());
                CHECK(rep.right.monadic());
            }
        }

        // A point of Alg(T) ≅ Disc2 has no adjoint over f_T, nor does its image over the identity.
        const auto D = cat("Disc2");
        const auto triv = build_algebra_category(trivial_relative_monad(identity_functor(D)));
        const auto r = constant_functor(terminal_category(), triv.cat, 0);
        const auto rep = decide_composite_monadicity(identity_functor(D), triv.u, r, MonadicityMode::Strict);
        CHECK(rep.holds);
        CHECK(rep.left.verdict == Verdict::NoAdjoint);
        CHECK(rep.right.verdict == Verdict::NoAdjoint);
    }

    TEST_CASE("composite monadicity needs a monadic r'")
    {
        const auto bang = constant_functor(cat("Interval"), terminal_category(), 0);
        const auto one = identity_functor(terminal_category());
        CHECK_THROWS_AS(decide_composite_monadicity(one, bang, identity_functor(cat("Interval")), MonadicityMode::Strict),
                        ContractError);
    }

    TEST_CASE("monadic iff left adjoint")
    {
        const auto S = cat("Split");
        const auto T = trivial_relative_monad(identity_functor(S));
        CHECK(check_monadic_iff_left_adjoint(identity_functor(S), identity_functor(S), T).holds);

        const auto B = cat("BZ2");
        for (const auto& [role, M] : instance("PointBZ2").monads) {
            const auto rep = check_monadic_iff_left_adjoint(pt(B, 0), identity_functor(B), M);
            CHECK(rep.holds);
            CHECK(rep.has_adjoint);
        }
    }

    TEST_CASE("the shape family stays within its bounds")
    {
        const auto fam = shape_family();
        CHECK(fam.element_cap == 2);
        CHECK(fam.names.size() == fam.shapes.size());
        for (const auto& s : fam.shapes) {
            CHECK(s->num_objects() <= 2);
            CHECK(s->num_morphisms() <= 6);
        }
    }

    TEST_CASE("suite on degenerate roots, and a broken instance is rejected as input")
    {
        std::vector<Instance> small;
        for (const char* n : {"Empty", "Terminal", "Disc2-empty-root", "Indisc2-empty-root"}) small.push_back(instance(n));
        SuiteBounds bounds;
        bounds.family = small_family();
        const auto rep = run_theorem_suite(small, bounds);
        CHECK(rep.passed);
        CHECK(rep.invalid_instances.empty());
        const auto* deg = rep.find("degenerate_root");
        REQUIRE(deg);
        CHECK(deg->checked > 0);
        CHECK(deg->failed == 0);

        Instance broken = instance("NoReflect");
        broken.name = "NoReflect-mutated";
        auto& T = broken.monads.at("T");
        T.unit[0] = T.j.cod->morphism("id_a");
        const auto bad = run_theorem_suite({broken}, bounds);
        REQUIRE(bad.invalid_instances.size() == 1);
        CHECK(bad.invalid_instances.front().rfind("NoReflect-mutated: ", 0) == 0);
        for (const auto& row : bad.rows) CHECK(row.failed == 0);
    }
}
