#pragma once

#include "relmon/relmonad.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relmon {

/// A named bundle of validated data, addressed by role.
///
/// Role conventions used by the suite: functor "j" is the root; functors whose
/// role starts with "r" are tested as right adjoints against it; monads are
/// relative to "j".
struct Instance {
    std::string name;
    std::string provenance; // builtin | generated(seed, params) | file
    std::string note;
    std::map<std::string, CatPtr> categories;
    std::map<std::string, Functor> functors;
    std::map<std::string, Distributor> distributors;
    std::map<std::string, RelativeMonad> monads;
    std::map<std::string, RelativeAdjunction> adjunctions;
};

/// Structural equality, component by component.
bool operator==(const Instance& a, const Instance& b);

/// Every law violation in the bundle, each witness prefixed by its role.
std::vector<Violation> check_instance(const Instance& inst);

/// The shipped instances, in a fixed order.
std::vector<Instance> builtin_corpus();

/// Looks up a builtin category by name (Empty, Terminal, Interval, Disc2,
/// Indisc2, BZ2, BM3, Split, Span, Pushout, ParallelPair, Idem, NoReflect).
/// Repeated calls return the same pointer.
CatPtr builtin_category(const std::string& name);

/// One-object category with the given multiplication table over elements
/// 0..n-1; element 0 must be the unit. Throws ContractError("NotAMonoid").
CatPtr delooping(const std::vector<std::vector<int>>& table, const std::vector<std::string>& names = {});

/// Thin category of a finite preorder given by its strict relations.
CatPtr poset_category(const std::vector<std::string>& objects, const std::vector<std::pair<std::string, std::string>>& less);

struct GenerationParams {
    int objects = 2;
    int max_hom = 2; // non-identity morphisms per ordered pair, at most
    int attempts = 1000;
};

/// Rejection-samples composition tables until associativity holds.
/// Deterministic per (seed, params); nullopt once the attempts run out.
std::optional<CatPtr> generate_category(std::uint64_t seed, const GenerationParams& params);

/// Instance bundles: a directory holding manifest.json plus one file per component.
Instance load_instance(const std::string& dir);
void save_instance(const Instance& inst, const std::string& dir);

} // namespace relmon
