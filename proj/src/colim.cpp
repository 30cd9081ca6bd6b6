#include "relmon/colim.hpp"

#include "relmon/search.hpp"

#include <algorithm>
#include <set>

namespace relmon {

namespace {

Violation violation(std::string kind, std::vector<std::string> witness, std::string message = {})
{
    return Violation{std::move(kind), std::move(witness), std::move(message)};
}

std::vector<int> as_domain(std::span<const MorId> hom) { return {hom.begin(), hom.end()}; }

// Leg searches only ever impose a[va] == m ; a[vb] or a[va] == a[vb] ; m.
// Same variable order and semantics as Search, without the per-constraint
// std::function, which dominated the audits.
class EquationSearch {
public:
    EquationSearch(const FinCategory& w, const char* label) : w_(w), label_(label) {}

    int add_variable(std::vector<int> domain)
    {
        domains_.push_back(std::move(domain));
        triggers_.emplace_back();
        return static_cast<int>(domains_.size()) - 1;
    }
    /// a[va] == m ; a[vb] when `before`, else a[va] == a[vb] ; m.
    void add_equation(int va, int vb, MorId m, bool before)
    {
        triggers_[std::max(va, vb)].push_back(Eq{va, vb, m, before});
    }

    template <class Visit>
    bool for_each(Visit&& visit) const
    {
        const std::uint64_t limit = enumeration_budget();
        std::uint64_t nodes = 0;
        const std::size_t n = domains_.size();
        std::vector<int> values(n, -1);
        const std::span<const int> view(values);
        if (n == 0) return visit(view);
        std::vector<std::size_t> position(n, 0);
        std::size_t depth = 0;
        while (true) {
            if (position[depth] >= domains_[depth].size()) {
                values[depth] = -1;
                position[depth] = 0;
                if (depth == 0) return true;
                --depth;
                ++position[depth];
                continue;
            }
            if (++nodes > limit) throw BudgetExceeded(label_, limit);
            values[depth] = domains_[depth][position[depth]];
            bool ok = true;
            for (const Eq& e : triggers_[depth]) {
                const MorId rhs = e.before ? w_.compose(e.m, values[e.vb]) : w_.compose(values[e.vb], e.m);
                if (values[e.va] != rhs) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                ++position[depth];
            } else if (depth + 1 == n) {
                if (!visit(view)) return false;
                ++position[depth];
            } else {
                ++depth;
            }
        }
    }

private:
    struct Eq {
        int va, vb;
        MorId m;
        bool before;
    };
    const FinCategory& w_;
    std::string label_;
    std::vector<std::vector<int>> domains_;
    std::vector<std::vector<Eq>> triggers_;
};

} // namespace

std::vector<Violation> check_cocone(const Cocone& c)
{
    std::vector<Violation> out;
    const auto& p = c.weight;
    const auto& X = *p.src;
    const auto& Y = *p.tgt;
    const auto& W = *c.diagram.cod;
    for (int m = 0; m < Y.num_morphisms(); ++m)
        for (int x = 0; x < X.num_objects(); ++x)
            for (int u = 0; u < p.size(Y.cod(m), x); ++u)
                if (c.leg(Y.dom(m), x, p.pull(m, x, u)) != W.compose(c.diagram.map(m), c.leg(Y.cod(m), x, u)))
                    out.push_back(violation("NaturalityFail", {"y", Y.morphism_name(m), X.object_name(x)}));
    for (int n = 0; n < X.num_morphisms(); ++n)
        for (int y = 0; y < Y.num_objects(); ++y)
            for (int u = 0; u < p.size(y, X.dom(n)); ++u)
                if (c.leg(y, X.cod(n), p.push(n, y, u)) != W.compose(c.leg(y, X.dom(n), u), c.apex.map(n)))
                    out.push_back(violation("NaturalityFail", {"x", X.morphism_name(n), Y.object_name(y)}));
    return out;
}

Cocone map_cocone(const Cocone& c, const Functor& g)
{
    Cocone out{c.weight, compose(c.diagram, g), compose(c.apex, g), c.legs};
    for (auto& row : out.legs)
        for (auto& k : row) k = g.map(k);
    return out;
}

// ---------------------------------------------------------------------------

ColimitContext::ColimitContext(Distributor p, Functor f) : p_(std::move(p)), f_(std::move(f))
{
    if (!same_category(f_.dom, p_.tgt)) throw ContractError("EndpointMismatch", "diagram domain is not the weight's target");
}

const std::vector<ColimitContext::Family>& ColimitContext::families(ObjId x, ObjId w) const
{
    auto cached = cache_.find({x, w});
    if (cached != cache_.end()) return cached->second;
    const auto& Y = *p_.tgt;
    const auto& W = *f_.cod;
    EquationSearch s(W, "colimit_families");
    std::vector<std::vector<int>> var(Y.num_objects());
    for (int y = 0; y < Y.num_objects(); ++y)
        for (int u = 0; u < p_.size(y, x); ++u) var[y].push_back(s.add_variable(as_domain(W.hom(f_(y), w))));
    for (int m = 0; m < Y.num_morphisms(); ++m) {
        if (Y.is_identity(m)) continue;
        for (int u = 0; u < p_.size(Y.cod(m), x); ++u)
            s.add_equation(var[Y.dom(m)][p_.pull(m, x, u)], var[Y.cod(m)][u], f_.map(m), true);
    }
    std::vector<Family> out;
    s.for_each([&](std::span<const int> a) {
        Family fam(Y.num_objects());
        for (int y = 0; y < Y.num_objects(); ++y)
            for (int v : var[y]) fam[y].push_back(a[v]);
        out.push_back(std::move(fam));
        return true;
    });
    return cache_.emplace(std::make_pair(x, w), std::move(out)).first->second;
}

std::optional<std::pair<ObjId, ObjId>> ColimitContext::failure(const Cocone& c)
{
    const auto& X = *p_.src;
    const auto& Y = *p_.tgt;
    const auto& W = *f_.cod;
    for (int x = 0; x < X.num_objects(); ++x) {
        const ObjId cx = c.apex(x);
        for (int w = 0; w < W.num_objects(); ++w) {
            std::set<std::vector<MorId>> images;
            for (MorId k : W.hom(cx, w)) {
                std::vector<MorId> img;
                for (int y = 0; y < Y.num_objects(); ++y)
                    for (int u = 0; u < p_.size(y, x); ++u) img.push_back(W.compose(c.leg(y, x, u), k));
                images.insert(std::move(img));
            }
            if (images.size() != W.hom(cx, w).size() || images.size() != family_count(x, w))
                return std::make_pair(x, w);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<WeightedColimit> weighted_colimit(const Distributor& p, const Functor& f, std::optional<ObjId>* not_found_at)
{
    ColimitContext ctx(p, f);
    const auto& X = *p.src;
    const auto& Y = *p.tgt;
    const auto& W = *f.cod;
    const int nx = X.num_objects();
    Cocone c{p, f, Functor{p.src, f.cod, std::vector<ObjId>(nx, -1), std::vector<MorId>(X.num_morphisms(), -1)},
             LegTable(Y.num_objects() * nx)};
    WeightedColimit out{c, std::vector<std::vector<std::size_t>>(nx, std::vector<std::size_t>(W.num_objects(), 0))};

    for (int x = 0; x < nx; ++x) {
        bool found = false;
        for (int w = 0; w < W.num_objects() && !found; ++w) {
            for (const auto& fam : ctx.families(x, w)) {
                bool ok = true;
                for (int w2 = 0; w2 < W.num_objects() && ok; ++w2) {
                    std::set<std::vector<MorId>> images;
                    for (MorId k : W.hom(w, w2)) {
                        std::vector<MorId> img;
                        for (int y = 0; y < Y.num_objects(); ++y)
                            for (MorId l : fam[y]) img.push_back(W.compose(l, k));
                        images.insert(std::move(img));
                    }
                    ok = images.size() == W.hom(w, w2).size() && images.size() == ctx.family_count(x, w2);
                }
                if (!ok) continue;
                out.cocone.apex.obj[x] = w;
                for (int y = 0; y < Y.num_objects(); ++y) out.cocone.legs[y * nx + x] = fam[y];
                found = true;
                break;
            }
        }
        if (!found) {
            if (not_found_at) *not_found_at = x;
            return std::nullopt;
        }
        for (int w2 = 0; w2 < W.num_objects(); ++w2) out.certificate[x][w2] = ctx.family_count(x, w2);
    }
    // The apex on morphisms is forced by the universal property.
    for (int n = 0; n < X.num_morphisms(); ++n) {
        const ObjId a = X.dom(n), b = X.cod(n);
        for (MorId k : W.hom(out.cocone.apex(a), out.cocone.apex(b))) {
            bool ok = true;
            for (int y = 0; y < Y.num_objects() && ok; ++y)
                for (int u = 0; u < p.size(y, a) && ok; ++u)
                    ok = W.compose(out.cocone.leg(y, a, u), k) == out.cocone.leg(y, b, p.push(n, y, u));
            if (ok) {
                out.cocone.apex.mor[n] = k;
                break;
            }
        }
        if (out.cocone.apex.mor[n] < 0) throw ContractError("EngineBug", "colimit apex is not functorial");
    }
    return out;
}

bool verify_colimit(const WeightedColimit& c)
{
    if (!check_functor(c.cocone.apex).empty() || !check_cocone(c.cocone).empty()) return false;
    ColimitContext ctx(c.cocone.weight, c.cocone.diagram);
    if (ctx.failure(c.cocone)) return false;
    const auto& W = *c.cocone.diagram.cod;
    for (int x = 0; x < c.cocone.weight.nx(); ++x)
        for (int w = 0; w < W.num_objects(); ++w)
            if (c.certificate[x][w] != ctx.family_count(x, w) || W.hom(c.cocone.apex(x), w).size() != c.certificate[x][w])
                return false;
    return true;
}

// ---------------------------------------------------------------------------

Cone dual_cocone(const Cocone& c)
{
    const auto& p = c.weight;
    Cone out{dual(p), opposite(c.diagram), opposite(c.apex), LegTable(c.legs.size())};
    for (int y = 0; y < p.ny(); ++y)
        for (int x = 0; x < p.nx(); ++x) out.legs[x * p.ny() + y] = c.legs[y * p.nx() + x];
    return out;
}

Cocone dual_cone(const Cone& c)
{
    const auto& p = c.weight;
    Cocone out{dual(p), opposite(c.diagram), opposite(c.apex), LegTable(c.legs.size())};
    for (int y = 0; y < p.ny(); ++y)
        for (int x = 0; x < p.nx(); ++x) out.legs[x * p.ny() + y] = c.legs[y * p.nx() + x];
    return out;
}

std::optional<WeightedLimit> weighted_limit(const Distributor& p, const Functor& g, std::optional<ObjId>* not_found_at)
{
    if (!same_category(g.dom, p.src)) throw ContractError("EndpointMismatch", "diagram domain is not the weight's source");
    auto colim = weighted_colimit(dual(p), opposite(g), not_found_at);
    if (!colim) return std::nullopt;
    Cone cone = dual_cocone(colim->cocone);
    cone.weight = p;
    cone.diagram = g;
    cone.apex = Functor{p.tgt, g.cod, cone.apex.obj, cone.apex.mor};
    return WeightedLimit{std::move(cone), std::move(colim->certificate)};
}

Distributor extension_weight(const Functor& c)
{
    return restrict_distributor(hom_distributor(c.cod), c, identity_functor(c.cod));
}

std::optional<WeightedColimit> left_extension(const Functor& c, const Functor& r, std::optional<ObjId>* not_found_at)
{
    if (!same_category(c.dom, r.dom)) throw ContractError("EndpointMismatch", "extension functors need a shared domain");
    return weighted_colimit(extension_weight(c), r, not_found_at);
}

// ---------------------------------------------------------------------------

AbsolutenessResult is_j_absolute(const Functor& j, const Cocone& colimit)
{
    const auto& f = colimit.diagram;
    if (!same_category(j.cod, f.cod)) throw ContractError("EndpointMismatch", "root and colimit live in different categories");
    const auto& E = *f.cod;
    const auto& A = *j.dom;
    const auto& p = colimit.weight;
    const Distributor q = restrict_distributor(hom_distributor(f.cod), j, f);
    AbsolutenessResult out;
    for (int a = 0; a < A.num_objects(); ++a) {
        for (int x = 0; x < p.nx(); ++x) {
            const TensorSet t = tensor_set(q, p, a, x);
            const auto target = E.hom(j(a), colimit.apex(x));
            std::vector<int> hit(target.size(), 0);
            bool ok = true;
            for (std::size_t i = 0; i < t.members.size() && ok; ++i) {
                if (t.cls[i] != static_cast<int>(i)) continue;
                const auto& mem = t.members[i];
                const MorId v = E.hom(j(a), f(mem.y))[mem.v];
                const MorId img = E.compose(v, colimit.leg(mem.y, x, mem.u));
                ok = ++hit[E.hom_index(img)] == 1;
            }
            ok = ok && std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
            if (!ok) {
                out.absolute = false;
                out.witness = std::make_pair(a, x);
                return out;
            }
        }
    }
    return out;
}

std::size_t nerve_hom_count(const Functor& j, ObjId e, ObjId e2)
{
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    Search s("nerve_hom");
    std::vector<std::vector<int>> var(A.num_objects());
    for (int a = 0; a < A.num_objects(); ++a)
        for (std::size_t i = 0; i < E.hom(j(a), e).size(); ++i) var[a].push_back(s.add_variable(as_domain(E.hom(j(a), e2))));
    for (int h = 0; h < A.num_morphisms(); ++h) {
        if (A.is_identity(h)) continue;
        const ObjId a2 = A.dom(h), a = A.cod(h);
        const MorId jh = j.map(h);
        for (MorId f : E.hom(j(a), e)) {
            const int va = var[a2][E.hom_index(E.compose(jh, f))], vb = var[a][E.hom_index(f)];
            s.add_constraint({va, vb}, [&E, jh, va, vb](Search::Assignment v) { return v[va] == E.compose(jh, v[vb]); });
        }
    }
    return s.count();
}

DensityResult is_dense(const Functor& j)
{
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    DensityResult out;
    for (int e = 0; e < E.num_objects(); ++e) {
        for (int e2 = 0; e2 < E.num_objects(); ++e2) {
            std::set<std::vector<MorId>> images;
            for (MorId k : E.hom(e, e2)) {
                std::vector<MorId> img;
                for (int a = 0; a < A.num_objects(); ++a)
                    for (MorId f : E.hom(j(a), e)) img.push_back(E.compose(f, k));
                images.insert(std::move(img));
            }
            if (images.size() != E.hom(e, e2).size() || images.size() != nerve_hom_count(j, e, e2)) {
                out.dense = false;
                out.witness = std::make_pair(e, e2);
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(CreationMode m) { return m == CreationMode::Strict ? "strict" : "nonstrict"; }
std::string to_string(CreationKind k) { return k == CreationKind::Colimit ? "colimit" : "limit"; }

std::vector<Cocone> enumerate_cocones(const Distributor& p, const Functor& f, const std::vector<Functor>& apexes,
                                      const LegFilter& leg_ok, std::size_t stop_after)
{
    const auto& X = *p.src;
    const auto& Y = *p.tgt;
    const auto& W = *f.cod;
    const int nx = X.num_objects();
    std::vector<Cocone> out;
    for (const auto& w : apexes) {
        EquationSearch s(W, "enumerate_cocones");
        std::vector<std::vector<int>> var(Y.num_objects() * nx);
        for (int y = 0; y < Y.num_objects(); ++y)
            for (int x = 0; x < nx; ++x)
                for (int u = 0; u < p.size(y, x); ++u) {
                    std::vector<int> dom;
                    for (MorId k : W.hom(f(y), w(x)))
                        if (!leg_ok || leg_ok(y, x, u, k)) dom.push_back(k);
                    var[y * nx + x].push_back(s.add_variable(std::move(dom)));
                }
        for (int m = 0; m < Y.num_morphisms(); ++m) {
            if (Y.is_identity(m)) continue;
            for (int x = 0; x < nx; ++x)
                for (int u = 0; u < p.size(Y.cod(m), x); ++u)
                    s.add_equation(var[Y.dom(m) * nx + x][p.pull(m, x, u)], var[Y.cod(m) * nx + x][u], f.map(m), true);
        }
        for (int n = 0; n < X.num_morphisms(); ++n) {
            if (X.is_identity(n)) continue;
            for (int y = 0; y < Y.num_objects(); ++y)
                for (int u = 0; u < p.size(y, X.dom(n)); ++u)
                    s.add_equation(var[y * nx + X.cod(n)][p.push(n, y, u)], var[y * nx + X.dom(n)][u], w.map(n), false);
        }
        const bool more = s.for_each([&](std::span<const int> a) {
            Cocone c{p, f, w, LegTable(var.size())};
            for (std::size_t i = 0; i < var.size(); ++i)
                for (int v : var[i]) c.legs[i].push_back(a[v]);
            out.push_back(std::move(c));
            return out.size() < stop_after;
        });
        if (!more) break;
    }
    return out;
}

bool preserves_colimit(const Functor& g, const Cocone& colimit)
{
    ColimitContext ctx(colimit.weight, compose(colimit.diagram, g));
    return ctx.is_colimiting(map_cocone(colimit, g));
}

namespace {

CreationReport check_colimit_creation(const Functor& g, const Distributor& p, const Functor& f, CreationMode mode,
                                      const std::optional<Cocone>& downstairs)
{
    if (!same_category(f.cod, g.dom)) throw ContractError("EndpointMismatch", "diagram does not land in the functor's domain");
    CreationReport rep;
    rep.mode = mode;
    const Functor fg = compose(f, g);
    ColimitContext down_ctx(p, fg);
    Cocone down;
    if (downstairs) {
        down = *downstairs;
        if (!check_cocone(down).empty() || down_ctx.failure(down))
            throw ContractError("DownstairsMissing", "the given downstairs cocone is not a colimit");
    } else {
        auto c = weighted_colimit(p, fg);
        if (!c) throw ContractError("DownstairsMissing", "the downstairs colimit does not exist");
        down = c->cocone;
    }
    ColimitContext up_ctx(p, f);

    if (mode == CreationMode::Strict) {
        const auto apexes = enumerate_functors_where(
            p.src, g.dom, [&](ObjId x, ObjId w) { return g(w) == down.apex(x); },
            [&](MorId n, MorId k) { return g.map(k) == down.apex.map(n); });
        auto lifts = enumerate_cocones(
            p, f, apexes, [&](ObjId y, ObjId x, int u, MorId k) { return g.map(k) == down.leg(y, x, u); }, 2);
        rep.lift_count = lifts.size();
        rep.unique = lifts.size() == 1;
        if (lifts.empty()) rep.violations.push_back(violation("NoLift", {}));
        if (lifts.size() > 1) rep.violations.push_back(violation("LiftNotUnique", {}));
        if (rep.unique) {
            rep.colimiting = up_ctx.is_colimiting(lifts.front());
            if (!rep.colimiting) rep.violations.push_back(violation("LiftNotColimiting", {}));
            rep.lift = lifts.front();
        }
        rep.exists_upstairs = rep.colimiting;
        rep.passed = rep.unique && rep.colimiting;
        return rep;
    }

    auto up = weighted_colimit(p, f);
    rep.exists_upstairs = up.has_value();
    if (!up) rep.violations.push_back(violation("NoColimitUpstairs", {}));
    else rep.lift = up->cocone;
    const auto cocones = enumerate_cocones(p, f, enumerate_functors(p.src, g.dom));
    for (std::size_t i = 0; i < cocones.size(); ++i) {
        const bool is_up = up_ctx.is_colimiting(cocones[i]);
        const bool is_down = down_ctx.is_colimiting(map_cocone(cocones[i], g));
        if (is_up) ++rep.lift_count;
        if (is_up != is_down) {
            rep.violations.push_back(violation("BiconditionalFails", {std::to_string(i)},
                                               is_up ? "colimit upstairs, not downstairs" : "colimit downstairs only"));
            break;
        }
    }
    rep.colimiting = rep.exists_upstairs;
    rep.unique = rep.lift_count == 1;
    rep.passed = rep.violations.empty();
    return rep;
}

} // namespace

CreationReport check_creation(const Functor& g, const Distributor& p, const Functor& f, CreationMode mode,
                              CreationKind kind, const std::optional<Cocone>& downstairs)
{
    if (kind == CreationKind::Colimit) return check_colimit_creation(g, p, f, mode, downstairs);
    CreationReport rep = check_colimit_creation(opposite(g), dual(p), opposite(f), mode, downstairs);
    rep.kind = CreationKind::Limit;
    return rep;
}

} // namespace relmon
