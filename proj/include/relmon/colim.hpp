#pragma once

#include "relmon/prof.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relmon {

/// Legs of a p-cocone, λ(y, x, u) ∈ W(f y, w x), indexed [y * |X| + x][u].
using LegTable = std::vector<std::vector<MorId>>;

/// A p-cocone (w, λ) for f: Y → W, with p: X ⇸ Y and apex w: X → W.
struct Cocone {
    Distributor weight;
    Functor diagram;
    Functor apex;
    LegTable legs;

    MorId leg(ObjId y, ObjId x, int u) const { return legs[y * weight.nx() + x][u]; }
};

/// Naturality of the legs in y and x (empty when natural).
std::vector<Violation> check_cocone(const Cocone& c);

/// Image of a cocone under g: W → W'.
Cocone map_cocone(const Cocone& c, const Functor& g);

/// Natural families p(-, x) ⇒ W(f -, w) at a fixed x, cached per (x, w).
class ColimitContext {
public:
    ColimitContext(Distributor p, Functor f);

    const Distributor& weight() const { return p_; }
    const Functor& diagram() const { return f_; }

    using Family = std::vector<std::vector<MorId>>; // [y][u]

    const std::vector<Family>& families(ObjId x, ObjId w) const;
    std::size_t family_count(ObjId x, ObjId w) const { return families(x, w).size(); }

    /// First (x, w') at which postcomposition with the legs is not a bijection.
    std::optional<std::pair<ObjId, ObjId>> failure(const Cocone& c);
    bool is_colimiting(const Cocone& c) { return !failure(c); }

private:
    Distributor p_;
    Functor f_;
    mutable std::map<std::pair<ObjId, ObjId>, std::vector<Family>> cache_;
};

/// p ⊛ f together with, for every (x, w'), the size of both sides of the
/// certified bijection W(apex x, w') ≅ NatFam(p(-, x), W(f -, w')).
struct WeightedColimit {
    Cocone cocone;
    std::vector<std::vector<std::size_t>> certificate; // [x][w']
};

/// Least representing object in canonical order, least legs among those.
/// When no colimit exists, `not_found_at` receives the first bad x.
std::optional<WeightedColimit> weighted_colimit(const Distributor& p, const Functor& f,
                                                std::optional<ObjId>* not_found_at = nullptr);

/// Re-checks every certificate and the naturality of the cocone.
bool verify_colimit(const WeightedColimit& c);

/// A p-cone for g: X → W: apex c: Y → W and legs μ(y, x, u) ∈ W(c y, g x).
struct Cone {
    Distributor weight;
    Functor diagram;
    Functor apex;
    LegTable legs; // [y * |X| + x][u]
};

struct WeightedLimit {
    Cone cone;
    std::vector<std::vector<std::size_t>> certificate; // [y][w']
};

/// Computed by dualizing, taking the weighted colimit, and dualizing back.
std::optional<WeightedLimit> weighted_limit(const Distributor& p, const Functor& g,
                                            std::optional<ObjId>* not_found_at = nullptr);

Cocone dual_cone(const Cone& c);
Cone dual_cocone(const Cocone& c);

/// The C'(c, 1)-weighted colimit of r, for c: D → C' and r: D → E.
std::optional<WeightedColimit> left_extension(const Functor& c, const Functor& r,
                                              std::optional<ObjId>* not_found_at = nullptr);
/// The weight used by left_extension.
Distributor extension_weight(const Functor& c);

struct AbsolutenessResult {
    bool absolute = true;
    std::optional<std::pair<ObjId, ObjId>> witness; // (a, x)
};

/// Whether the canonical map E(j a, f -) ⊗ p(-, x) → E(j a, apex x) is a
/// bijection for every a and x.
AbsolutenessResult is_j_absolute(const Functor& j, const Cocone& colimit);

struct DensityResult {
    bool dense = true;
    std::optional<std::pair<ObjId, ObjId>> witness; // (e, e')
};

DensityResult is_dense(const Functor& j);

/// Number of natural families E(j -, e) ⇒ E(j -, e').
std::size_t nerve_hom_count(const Functor& j, ObjId e, ObjId e2);

// ---------------------------------------------------------------------------
// Creation

enum class CreationMode { Strict, NonStrict };
enum class CreationKind { Colimit, Limit };

std::string to_string(CreationMode m);
std::string to_string(CreationKind k);

struct CreationReport {
    CreationMode mode = CreationMode::Strict;
    CreationKind kind = CreationKind::Colimit;
    bool passed = false;
    /// For limits the lift is reported on the dual side.
    std::optional<Cocone> lift;
    std::size_t lift_count = 0;
    bool unique = false;
    bool colimiting = false;
    bool exists_upstairs = false;
    std::vector<Violation> violations;
};

/// Whether g: W → X creates the p-weighted (co)limit of f: Y → W.
/// `downstairs`, when given, is the (co)limit cocone in X to be lifted; otherwise
/// p ⊛ (f ; g) is computed. For limits, `downstairs` is a dualized cone.
/// Throws ContractError("DownstairsMissing") when nothing is there to lift.
CreationReport check_creation(const Functor& g, const Distributor& p, const Functor& f, CreationMode mode,
                              CreationKind kind, const std::optional<Cocone>& downstairs = std::nullopt);

/// All p-cocones for f with apex functor drawn from `apexes`, and legs
/// optionally filtered per entry.
using LegFilter = std::function<bool(ObjId y, ObjId x, int u, MorId k)>;
std::vector<Cocone> enumerate_cocones(const Distributor& p, const Functor& f, const std::vector<Functor>& apexes,
                                      const LegFilter& leg_ok = nullptr, std::size_t stop_after = static_cast<std::size_t>(-1));

/// Whether g sends the colimit to a colimit.
bool preserves_colimit(const Functor& g, const Cocone& colimit);

} // namespace relmon
