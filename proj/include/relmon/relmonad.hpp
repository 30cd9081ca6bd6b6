#pragma once

#include "relmon/reladj.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace relmon {

/// A j-monad (j, t, η, †) with j, t: A → E.
///
/// ext[a * |A| + b][hom_index(f)] = †(f) ∈ E(t a, t b) for f ∈ E(j a, t b).
struct RelativeMonad {
    Functor j, t;
    std::vector<MorId> unit; // η_a ∈ E(j a, t a)
    std::vector<std::vector<MorId>> ext;

    int na() const { return j.dom->num_objects(); }
    MorId extend(ObjId a, ObjId b, MorId f) const { return ext[a * na() + b][j.cod->hom_index(f)]; }
};

bool operator==(const RelativeMonad& a, const RelativeMonad& b);

struct MonadDescription {
    std::map<std::string, std::string> unit;
    std::map<std::tuple<std::string, std::string, std::string>, std::string> ext;
};

/// LawFail violations, in law order: unit_naturality, binaturality, left_unit,
/// right_unit, associativity. The first witness entry names the law.
std::vector<Violation> check_relative_monad(const RelativeMonad& t);

RelativeMonad validate_relative_monad(const Functor& j, const Functor& t, const MonadDescription& raw);
MonadDescription describe(const RelativeMonad& t);

/// t = ℓ ; r, η_a = ♯(id), †(f) = r(♭ f).
RelativeMonad monad_from_adjunction(const RelativeAdjunction& adj);

/// t = j, η = id, † = id on hom-sets.
RelativeMonad trivial_relative_monad(const Functor& j);

/// For T a j'-monad with j': E' → E'' and j: A → E', the (j ; j')-monad.
RelativeMonad precompose_root(const RelativeMonad& t, const Functor& j);

/// Every j-monad over every carrier, in canonical order.
std::vector<RelativeMonad> enumerate_relative_monads(const Functor& j);

/// Every j-monad with the given carrier.
std::vector<RelativeMonad> enumerate_relative_monads(const Functor& j, const Functor& t);

} // namespace relmon
