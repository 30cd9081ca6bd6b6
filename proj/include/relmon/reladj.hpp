#pragma once

#include "relmon/colim.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace relmon {

/// ℓ ⊣_j r with j: A → E, ℓ: A → C, r: C → E.
///
/// sharp[a * |C| + c][hom_index(k)] = ♯(k) ∈ E(j a, r c) for k ∈ C(ℓ a, c).
/// flat is the pointwise inverse, filled in only where ♯ is bijective.
struct RelativeAdjunction {
    Functor j, l, r;
    std::vector<std::vector<MorId>> sharp;
    std::vector<std::vector<MorId>> flat;

    int nc() const { return r.dom->num_objects(); }
    /// ♯(k) for k: ℓ a → c.
    MorId sharp_of(ObjId a, MorId k) const { return sharp[a * nc() + r.dom->cod(k)][r.dom->hom_index(k)]; }
    /// ♭(f) for f: j a → r c.
    MorId flat_of(ObjId a, ObjId c, MorId f) const { return flat[a * nc() + c][j.cod->hom_index(f)]; }
    /// ♯(id_{ℓ a}).
    MorId unit(ObjId a) const { return sharp_of(a, l.cod->identity(l(a))); }
};

/// Sharp table keyed by names (a, c, k).
struct AdjunctionDescription {
    std::map<std::tuple<std::string, std::string, std::string>, std::string> sharp;
};

/// Builds the flat table where possible; does not validate.
RelativeAdjunction assemble_adjunction(Functor j, Functor l, Functor r, std::vector<std::vector<MorId>> sharp);

/// NotBijective(a, c), NaturalityFail(side, morphism, ...) and endpoint problems.
std::vector<Violation> check_relative_adjunction(const RelativeAdjunction& adj);

RelativeAdjunction validate_relative_adjunction(const Functor& j, const Functor& l, const Functor& r,
                                                const AdjunctionDescription& raw);
AdjunctionDescription describe(const RelativeAdjunction& adj);

/// 1_E ⊣_{1_E} 1_E.
RelativeAdjunction identity_adjunction(const CatPtr& e);

/// Representability search: for each a the first (x, u ∈ E(j a, r x)) in
/// canonical order (reversed when asked) with m ↦ u ; r m bijective.
std::optional<RelativeAdjunction> find_left_relative_adjoint(const Functor& j, const Functor& r, bool reverse_order = false);

/// Natural isomorphism between the left adjoints of two adjunctions with the
/// same j and r, if any.
std::optional<NatTrans> compare_left_adjoints(const RelativeAdjunction& a, const RelativeAdjunction& b);

// ---------------------------------------------------------------------------

/// For ℓ ⊣_j r, a tight-cell c: C → C' and r': C' → E with c ; r' = r (ρ the
/// identity): condition 1 is ℓ ; c ⊣_j r' with (c, ρ) a right-morphism,
/// condition 2 is ρ exhibiting r' as the j-absolute left extension c ▷ r.
struct RightMorphismReport {
    bool commutes = false;
    bool adjunction = false; // condition 1
    bool colimiting = false;
    bool absolute = false;
    bool extension = false; // condition 2
    bool equivalent = false;
    std::vector<Violation> violations;
};

/// The cocone of c ▷ r with apex r' and legs u ↦ r'(u).
Cocone extension_cocone(const Functor& c, const Functor& r, const Functor& r_prime);

RightMorphismReport check_right_morphism(const RelativeAdjunction& adj, const Functor& c, const Functor& r_prime);

enum class PasteDirection { Paste, Unpaste };

struct PastingReport {
    PasteDirection direction = PasteDirection::Paste;
    RelativeAdjunction inner; // ℓ ⊣_{ℓ'} r
    RelativeAdjunction outer; // ℓ' ⊣_j r'
    RelativeAdjunction composite; // ℓ ⊣_j (r ; r')
    bool inner_valid = false;
    bool composite_valid = false;
    std::vector<Violation> violations;
    /// When j is dense: the composite adjunction against (c = r, r').
    std::optional<RightMorphismReport> right_morphism;
};

/// paste: `given` is the inner triangle and `r` is ignored.
/// unpaste: `given` is the composite ℓ ⊣_j (r ; r'), and `r` is the factor to split off.
/// Throws ContractError("ValidationFail") if exactly one side validates.
PastingReport paste_adjunction(const RelativeAdjunction& given, const RelativeAdjunction& outer, const Functor& r,
                               PasteDirection direction);

} // namespace relmon
