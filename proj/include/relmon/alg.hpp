#pragma once

#include "relmon/relmonad.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace relmon {

/// A T-algebra (e, α) with carrier e: D → E.
///
/// alpha[a * |D| + d][hom_index(f)] = α(f) ∈ E(t a, e d) for f ∈ E(j a, e d).
struct Algebra {
    Functor e;
    std::vector<std::vector<MorId>> alpha;

    int nd() const { return e.dom->num_objects(); }
    MorId act(ObjId a, ObjId d, MorId f) const { return alpha[a * nd() + d][e.cod->hom_index(f)]; }
};

bool operator==(const Algebra& a, const Algebra& b);

/// Binaturality, unit and compatibility failures (LawFail with the law name first).
std::vector<Violation> check_algebra(const RelativeMonad& T, const Algebra& alg);

/// Every α making (e, α) a T-algebra.
std::vector<Algebra> enumerate_algebra_structures(const RelativeMonad& T, const Functor& e);

/// Every T-algebra with domain D, in canonical order.
std::vector<Algebra> enumerate_algebras(const RelativeMonad& T, const CatPtr& D);

/// The restriction of an algebra along x: D' → D.
Algebra restrict_algebra(const Algebra& alg, const Functor& x);

/// A graded morphism ε: p_1, …, p_n ⇒ E(e, e') between algebras, n ≤ 2.
struct GradedMorphism {
    GradedCell cell; // components in E(e x_0, e' x_n), by element index
};

/// Graded cells into E(e, e') satisfying α'(g ; ε(u)) = α(g) ; ε(u).
std::vector<GradedMorphism> enumerate_graded_morphisms(const RelativeMonad& T, const Algebra& source,
                                                       const Algebra& target, const std::vector<Distributor>& chain);

/// Component of a graded morphism as a morphism of E.
MorId graded_component(const GradedMorphism& g, const Algebra& source, const Algebra& target, const std::vector<int>& key);

// ---------------------------------------------------------------------------

/// Alg(T): algebras with terminal domain, grade-0 morphisms, the forgetful
/// u_T, the free f_T, the generic algebra (u_T, α_T) and the resolution
/// f_T ⊣_j u_T.
struct AlgebraCategory {
    RelativeMonad T;
    CatPtr cat;
    std::vector<Algebra> objects;
    Functor u;
    Functor f;
    Algebra generic;
    RelativeAdjunction adjunction;
    std::map<std::tuple<ObjId, ObjId, MorId>, MorId> over; // (source, target, h) -> morphism

    /// The morphism of Alg(T) between the given objects over h, if any.
    std::optional<MorId> lift(ObjId source, ObjId target, MorId h) const;
    /// Index of the object with this carrier object and α (terminal-domain algebra).
    std::optional<ObjId> find(const Algebra& alg) const;
};

/// Serialized (carrier, α) used as the object name.
std::string algebra_name(const RelativeMonad& T, const Algebra& alg);

AlgebraCategory build_algebra_category(const RelativeMonad& T);

/// The algebra (r, α^r) with α^r(f) = r(♭ f) carried by a resolution.
Algebra resolution_algebra(const RelativeAdjunction& adj);

struct ComparisonData {
    Functor K;
    bool commutes_with_forgetful = false; // K ; u_T = r
    bool commutes_with_free = false;      // ℓ ; K = f_T
    /// Functors x with x ; u_T = r and α_T ∘ x = α^r.
    std::size_t lift_count = 0;
    bool unique = false;
};

/// Throws ContractError("MonadMismatch") when adj does not induce algcat's monad.
ComparisonData comparison_functor(const RelativeAdjunction& adj, const AlgebraCategory& algcat);

/// All x: D → M with x ; u = e and α_u ∘ x = α (stops after `stop_after`).
std::vector<Functor> algebra_lifts(const Algebra& generic, const Algebra& alg, std::size_t stop_after = 2);

// ---------------------------------------------------------------------------

struct AlgebraObjectReport {
    bool precheck = false;
    bool clause1 = false;
    bool clause2 = false;
    bool passed = false;
    int grade_bound = 1;
    std::size_t algebras_checked = 0;
    std::size_t morphisms_checked = 0;
    std::vector<Violation> violations;
};

struct AlgebraObjectBounds {
    std::vector<CatPtr> shapes;       // algebra domains for clause 1
    std::vector<CatPtr> grade_shapes; // algebra domains for clause 2
    int grade_bound = 1;
    int element_cap = 1;
};

AlgebraObjectBounds default_algebra_object_bounds();

/// Checks the universal property of (u, α_u) over M = generic.e.dom.
AlgebraObjectReport verify_algebra_object(const Algebra& candidate, const RelativeMonad& T, const AlgebraObjectBounds& bounds);

// ---------------------------------------------------------------------------

/// For a j-monad T' and an f_{T'}-monad T, the j-monad T ; u_{T'}.
RelativeMonad postcompose_monad(const RelativeMonad& T, const AlgebraCategory& base);

/// (x, α) ↦ (x ; u_{T'}, u_{T'}(α(♭' -))).
Algebra transport_forward(const Algebra& alg, const AlgebraCategory& base, const RelativeMonad& T);

/// Inverse of transport_forward; nullopt if the lift does not exist.
std::optional<Algebra> transport_backward(const Algebra& alg, const AlgebraCategory& base, const RelativeMonad& T);

struct TransportReport {
    std::size_t algebras = 0;
    std::size_t composite_algebras = 0;
    std::size_t morphisms = 0;
    std::size_t composite_morphisms = 0;
    bool forward_bijective = false;
    bool round_trips = false;
    bool passed = false;
    std::vector<Violation> violations;
};

/// Transports all algebras with domains in `domains` and their graded
/// morphisms (grade 0, and grade 1 over `grades`), in both directions.
/// Throws ContractError("RootMismatch") unless T's root is f_{T'}.
TransportReport transport_algebras(const AlgebraCategory& base, const RelativeMonad& T, const std::vector<CatPtr>& domains,
                                   const std::vector<Distributor>& grades);

} // namespace relmon
