#pragma once

#include "relmon/error.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relmon {

using ObjId = int;
using MorId = int;

/// Raw, unvalidated description of a finite category. Composition keys use
/// diagrammatic order: {"f", "g"} -> "h" means f then g.
struct CategoryDescription {
    struct Arrow {
        std::string name, dom, cod;
    };
    std::vector<std::string> objects;
    std::vector<Arrow> morphisms;
    std::map<std::string, std::string> identities;
    std::map<std::pair<std::string, std::string>, std::string> composition;
};

/// A validated finite category stored as dense tables. Objects and morphisms
/// keep the order of the description they were built from.
class FinCategory {
public:
    /// Returns the law violations of a description (empty when lawful).
    static std::vector<Violation> check(const CategoryDescription& raw);

    /// Validates and builds; throws ValidationError with every violation found.
    static FinCategory build(const CategoryDescription& raw);

    CategoryDescription describe() const;

    int num_objects() const noexcept { return static_cast<int>(object_names_.size()); }
    int num_morphisms() const noexcept { return static_cast<int>(morphism_names_.size()); }

    const std::string& object_name(ObjId x) const { return object_names_.at(x); }
    const std::string& morphism_name(MorId f) const { return morphism_names_.at(f); }
    std::optional<ObjId> find_object(const std::string& name) const;
    std::optional<MorId> find_morphism(const std::string& name) const;
    ObjId object(const std::string& name) const;
    MorId morphism(const std::string& name) const;

    ObjId dom(MorId f) const { return dom_[f]; }
    ObjId cod(MorId f) const { return cod_[f]; }
    MorId identity(ObjId x) const { return identity_[x]; }
    bool is_identity(MorId f) const { return identity_[dom_[f]] == f; }

    /// f;g (f first). Precondition: cod f == dom g.
    MorId compose(MorId f, MorId g) const { return comp_[static_cast<std::size_t>(f) * morphism_names_.size() + g]; }

    std::span<const MorId> hom(ObjId x, ObjId y) const { return homs_[static_cast<std::size_t>(x) * object_names_.size() + y]; }
    /// Position of f inside hom(dom f, cod f).
    int hom_index(MorId f) const { return hom_pos_[f]; }

    /// Two-sided inverse, if any.
    std::optional<MorId> inverse(MorId f) const;
    bool is_invertible(MorId f) const { return inverse_[f] >= 0; }
    bool isomorphic(ObjId x, ObjId y) const;

    friend bool operator==(const FinCategory& a, const FinCategory& b);

private:
    std::vector<std::string> object_names_;
    std::vector<std::string> morphism_names_;
    std::vector<ObjId> dom_, cod_;
    std::vector<MorId> identity_;
    std::vector<MorId> comp_;
    std::vector<std::vector<MorId>> homs_;
    std::vector<int> hom_pos_;
    std::vector<MorId> inverse_;
    std::map<std::string, ObjId> object_index_;
    std::map<std::string, MorId> morphism_index_;

    void index();
};

using CatPtr = std::shared_ptr<const FinCategory>;

CatPtr make_category(const CategoryDescription& raw);
CatPtr share(FinCategory c);

/// Same tables (names, order, composition). Pointer-equal categories short-circuit.
bool same_category(const CatPtr& a, const CatPtr& b);

/// Formal dual: same names and order, dom/cod swapped, composition transposed.
CatPtr opposite(const CatPtr& c);

/// Shared instances: the empty category and the one with object "*" and arrow "id".
const CatPtr& empty_category();
const CatPtr& terminal_category();


// ---------------------------------------------------------------------------
// Functors

struct FunctorDescription {
    std::map<std::string, std::string> on_objects;
    std::map<std::string, std::string> on_morphisms;
};

struct Functor {
    CatPtr dom, cod;
    std::vector<ObjId> obj;
    std::vector<MorId> mor;

    ObjId operator()(ObjId x) const { return obj[x]; }
    MorId map(MorId f) const { return mor[f]; }

    FunctorDescription describe() const;
};

bool operator==(const Functor& a, const Functor& b);

/// Violations of the functor laws for a table (empty when lawful).
std::vector<Violation> check_functor(const Functor& f);
Functor validate_functor(const FunctorDescription& raw, const CatPtr& dom, const CatPtr& cod);
Functor checked(Functor f);

Functor identity_functor(const CatPtr& c);
Functor compose(const Functor& f, const Functor& g); // f then g
Functor opposite(const Functor& f);
/// The unique functor from the empty category.
Functor empty_functor(const CatPtr& empty, const CatPtr& cod);
Functor constant_functor(const CatPtr& dom, const CatPtr& cod, ObjId x);
/// The full subcategory on `keep` (in the given order) with its inclusion.
Functor full_subcategory(const CatPtr& c, const std::vector<ObjId>& keep);
/// All functors dom -> cod in canonical order.
std::vector<Functor> enumerate_functors(const CatPtr& dom, const CatPtr& cod);

/// Functors whose object and morphism assignments pass the given filters;
/// the filters prune the search instead of post-filtering.
using ObjFilter = std::function<bool(ObjId, ObjId)>;
using MorFilter = std::function<bool(MorId, MorId)>;
std::vector<Functor> enumerate_functors_where(const CatPtr& dom, const CatPtr& cod, const ObjFilter& obj_ok,
                                              const MorFilter& mor_ok, std::size_t stop_after = static_cast<std::size_t>(-1));

// ---------------------------------------------------------------------------
// Natural transformations

struct NatTrans {
    Functor source, target;
    std::vector<MorId> components;
};

bool parallel(const Functor& f, const Functor& g);
std::vector<Violation> check_nat_trans(const NatTrans& t);
std::vector<NatTrans> enumerate_natural_transformations(const Functor& f, const Functor& g);
std::optional<NatTrans> find_natural_isomorphism(const Functor& f, const Functor& g);

// ---------------------------------------------------------------------------
// Classification

struct FunctorClassification {
    bool faithful = true;
    bool full = true;
    bool essentially_surjective = true;
    bool bijective_on_objects = true;
    bool bijective_on_morphisms = true;
    bool conservative = true;
    bool is_iso = true;
    bool is_equivalence = true;
    /// flag name -> witness names for every failed flag
    std::map<std::string, std::vector<std::string>> witnesses;
};

FunctorClassification classify_functor(const Functor& f);

/// For a full, faithful, essentially surjective functor, a quasi-inverse.
std::optional<Functor> quasi_inverse(const Functor& f);

} // namespace relmon
