#include "relmon/fincat.hpp"

#include "relmon/search.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace relmon {

namespace {

bool bad_name(const std::string& s)
{
    return s.empty() || s.find(';') != std::string::npos || s.find('|') != std::string::npos;
}

Violation violation(std::string kind, std::vector<std::string> witness, std::string message = {})
{
    return Violation{std::move(kind), std::move(witness), std::move(message)};
}

} // namespace

std::vector<Violation> FinCategory::check(const CategoryDescription& raw)
{
    std::vector<Violation> out;
    std::map<std::string, int> objs, mors;
    for (const auto& o : raw.objects) {
        if (bad_name(o)) out.push_back(violation("BadName", {o}, "names must be non-empty without ';' or '|'"));
        if (!objs.emplace(o, static_cast<int>(objs.size())).second) out.push_back(violation("DuplicateName", {o}));
    }
    for (const auto& m : raw.morphisms) {
        if (bad_name(m.name)) out.push_back(violation("BadName", {m.name}, "names must be non-empty without ';' or '|'"));
        if (!mors.emplace(m.name, static_cast<int>(mors.size())).second)
            out.push_back(violation("DuplicateName", {m.name}));
        if (!objs.count(m.dom)) out.push_back(violation("DanglingReference", {m.name, m.dom}, "unknown domain"));
        if (!objs.count(m.cod)) out.push_back(violation("DanglingReference", {m.name, m.cod}, "unknown codomain"));
    }
    if (!out.empty()) return out;

    std::map<std::string, const CategoryDescription::Arrow*> arrow;
    for (const auto& m : raw.morphisms) arrow[m.name] = &m;

    for (const auto& o : raw.objects) {
        auto it = raw.identities.find(o);
        if (it == raw.identities.end()) {
            out.push_back(violation("MissingIdentity", {o}));
            continue;
        }
        auto a = arrow.find(it->second);
        if (a == arrow.end() || a->second->dom != o || a->second->cod != o)
            out.push_back(violation("MissingIdentity", {o, it->second}, "identity must be an endomorphism of its object"));
    }
    for (const auto& [o, _] : raw.identities) {
        if (!objs.count(o)) out.push_back(violation("DanglingReference", {o}, "identity for unknown object"));
    }

    for (const auto& [key, h] : raw.composition) {
        const auto& [f, g] = key;
        auto fa = arrow.find(f), ga = arrow.find(g), ha = arrow.find(h);
        if (fa == arrow.end() || ga == arrow.end()) {
            out.push_back(violation("BadComposite", {f, g}, "unknown morphism in key"));
            continue;
        }
        if (fa->second->cod != ga->second->dom) {
            out.push_back(violation("BadComposite", {f, g}, "entry for a non-composable pair"));
            continue;
        }
        if (ha == arrow.end()) {
            out.push_back(violation("BadComposite", {f, g, h}, "unknown composite"));
            continue;
        }
        if (ha->second->dom != fa->second->dom || ha->second->cod != ga->second->cod)
            out.push_back(violation("BadComposite", {f, g, h}, "composite has the wrong domain or codomain"));
    }
    for (const auto& f : raw.morphisms) {
        for (const auto& g : raw.morphisms) {
            if (f.cod == g.dom && !raw.composition.count({f.name, g.name}))
                out.push_back(violation("BadComposite", {f.name, g.name}, "missing composite"));
        }
    }
    if (!out.empty()) return out;

    auto comp = [&](const std::string& f, const std::string& g) -> const std::string& {
        return raw.composition.at({f, g});
    };
    for (const auto& f : raw.morphisms) {
        const auto& idd = raw.identities.at(f.dom);
        const auto& idc = raw.identities.at(f.cod);
        if (comp(idd, f.name) != f.name)
            out.push_back(violation("UnitViolation", {idd, f.name}, "identity is not a left unit"));
        if (comp(f.name, idc) != f.name)
            out.push_back(violation("UnitViolation", {f.name, idc}, "identity is not a right unit"));
    }
    for (const auto& f : raw.morphisms) {
        for (const auto& g : raw.morphisms) {
            if (f.cod != g.dom) continue;
            const auto& fg = comp(f.name, g.name);
            for (const auto& h : raw.morphisms) {
                if (g.cod != h.dom) continue;
                if (comp(fg, h.name) != comp(f.name, comp(g.name, h.name)))
                    out.push_back(violation("NonAssociative", {f.name, g.name, h.name}));
            }
        }
    }
    return out;
}

FinCategory FinCategory::build(const CategoryDescription& raw)
{
    auto violations = check(raw);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    FinCategory c;
    c.object_names_ = raw.objects;
    for (const auto& m : raw.morphisms) c.morphism_names_.push_back(m.name);
    for (std::size_t i = 0; i < c.object_names_.size(); ++i) c.object_index_[c.object_names_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < c.morphism_names_.size(); ++i)
        c.morphism_index_[c.morphism_names_[i]] = static_cast<int>(i);
    for (const auto& m : raw.morphisms) {
        c.dom_.push_back(c.object_index_.at(m.dom));
        c.cod_.push_back(c.object_index_.at(m.cod));
    }
    for (const auto& o : raw.objects) c.identity_.push_back(c.morphism_index_.at(raw.identities.at(o)));
    const std::size_t n = c.morphism_names_.size();
    c.comp_.assign(n * n, -1);
    for (const auto& [key, h] : raw.composition)
        c.comp_[c.morphism_index_.at(key.first) * n + c.morphism_index_.at(key.second)] = c.morphism_index_.at(h);
    c.index();
    return c;
}

void FinCategory::index()
{
    const std::size_t no = object_names_.size(), nm = morphism_names_.size();
    homs_.assign(no * no, {});
    hom_pos_.assign(nm, 0);
    for (std::size_t f = 0; f < nm; ++f) {
        auto& h = homs_[dom_[f] * no + cod_[f]];
        hom_pos_[f] = static_cast<int>(h.size());
        h.push_back(static_cast<MorId>(f));
    }
    inverse_.assign(nm, -1);
    for (std::size_t f = 0; f < nm; ++f) {
        for (MorId g : hom(cod_[f], dom_[f])) {
            if (compose(static_cast<MorId>(f), g) == identity_[dom_[f]] && compose(g, static_cast<MorId>(f)) == identity_[cod_[f]]) {
                inverse_[f] = g;
                break;
            }
        }
    }
}

CategoryDescription FinCategory::describe() const
{
    CategoryDescription d;
    d.objects = object_names_;
    for (std::size_t f = 0; f < morphism_names_.size(); ++f)
        d.morphisms.push_back({morphism_names_[f], object_names_[dom_[f]], object_names_[cod_[f]]});
    for (std::size_t x = 0; x < object_names_.size(); ++x) d.identities[object_names_[x]] = morphism_names_[identity_[x]];
    const int n = num_morphisms();
    for (MorId f = 0; f < n; ++f)
        for (MorId g = 0; g < n; ++g)
            if (cod_[f] == dom_[g]) d.composition[{morphism_names_[f], morphism_names_[g]}] = morphism_names_[compose(f, g)];
    return d;
}

std::optional<ObjId> FinCategory::find_object(const std::string& name) const
{
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<MorId> FinCategory::find_morphism(const std::string& name) const
{
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
}

ObjId FinCategory::object(const std::string& name) const
{
    if (auto x = find_object(name)) return *x;
    throw ContractError("UnknownObject", name);
}

MorId FinCategory::morphism(const std::string& name) const
{
    if (auto f = find_morphism(name)) return *f;
    throw ContractError("UnknownMorphism", name);
}

std::optional<MorId> FinCategory::inverse(MorId f) const
{
    if (inverse_[f] < 0) return std::nullopt;
    return inverse_[f];
}

bool FinCategory::isomorphic(ObjId x, ObjId y) const
{
    for (MorId f : hom(x, y))
        if (is_invertible(f)) return true;
    return false;
}

bool operator==(const FinCategory& a, const FinCategory& b)
{
    return a.object_names_ == b.object_names_ && a.morphism_names_ == b.morphism_names_ && a.dom_ == b.dom_
        && a.cod_ == b.cod_ && a.identity_ == b.identity_ && a.comp_ == b.comp_;
}

CatPtr make_category(const CategoryDescription& raw) { return std::make_shared<const FinCategory>(FinCategory::build(raw)); }

CatPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

bool same_category(const CatPtr& a, const CatPtr& b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {

CatPtr build_opposite(const CatPtr& c)
{
    CategoryDescription d = c->describe();
    for (auto& m : d.morphisms) std::swap(m.dom, m.cod);
    std::map<std::pair<std::string, std::string>, std::string> flipped;
    for (const auto& [k, v] : d.composition) flipped[{k.second, k.first}] = v;
    d.composition = std::move(flipped);
    return make_category(d);
}

// Dualization is hot in the audits. Entries hold the opposite strongly and the
// way back weakly, so op(op(c)) is c again without a reference cycle.
struct OppositeEntry {
    std::weak_ptr<const FinCategory> key;
    CatPtr strong;
    std::weak_ptr<const FinCategory> weak;
};

} // namespace

CatPtr opposite(const CatPtr& c)
{
    static std::mutex mu;
    static std::map<const FinCategory*, OppositeEntry> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(c.get());
    if (it != cache.end() && !it->second.key.expired() && it->second.key.lock() == c) {
        if (it->second.strong) return it->second.strong;
        if (CatPtr back = it->second.weak.lock()) return back;
    }
    if (cache.size() > 4096)
        for (auto e = cache.begin(); e != cache.end();)
            e = e->second.key.expired() ? cache.erase(e) : std::next(e);
    CatPtr op = build_opposite(c);
    cache[c.get()] = OppositeEntry{c, op, {}};
    cache[op.get()] = OppositeEntry{op, nullptr, c};
    return op;
}

const CatPtr& empty_category()
{
    static const CatPtr c = make_category({});
    return c;
}

const CatPtr& terminal_category()
{
    static const CatPtr c = make_category({{"*"}, {{"id", "*", "*"}}, {{"*", "id"}}, {{{"id", "id"}, "id"}}});
    return c;
}

Functor full_subcategory(const CatPtr& c, const std::vector<ObjId>& keep)
{
    const auto& C = *c;
    CategoryDescription d;
    std::vector<MorId> kept;
    std::vector<char> in(C.num_objects(), 0);
    for (ObjId x : keep) {
        d.objects.push_back(C.object_name(x));
        in[x] = 1;
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
        if (!in[C.dom(f)] || !in[C.cod(f)]) continue;
        kept.push_back(f);
        d.morphisms.push_back({C.morphism_name(f), C.object_name(C.dom(f)), C.object_name(C.cod(f))});
    }
    for (ObjId x : keep) d.identities[C.object_name(x)] = C.morphism_name(C.identity(x));
    for (MorId f : kept)
        for (MorId g : kept)
            if (C.cod(f) == C.dom(g)) d.composition[{C.morphism_name(f), C.morphism_name(g)}] = C.morphism_name(C.compose(f, g));
    Functor inc{make_category(d), c, keep, kept};
    return inc;
}

// ---------------------------------------------------------------------------

FunctorDescription Functor::describe() const
{
    FunctorDescription d;
    for (int x = 0; x < dom->num_objects(); ++x) d.on_objects[dom->object_name(x)] = cod->object_name(obj[x]);
    for (int f = 0; f < dom->num_morphisms(); ++f) d.on_morphisms[dom->morphism_name(f)] = cod->morphism_name(mor[f]);
    return d;
}

bool operator==(const Functor& a, const Functor& b)
{
    return same_category(a.dom, b.dom) && same_category(a.cod, b.cod) && a.obj == b.obj && a.mor == b.mor;
}

std::vector<Violation> check_functor(const Functor& F)
{
    std::vector<Violation> out;
    const auto& C = *F.dom;
    const auto& D = *F.cod;
    if (static_cast<int>(F.obj.size()) != C.num_objects() || static_cast<int>(F.mor.size()) != C.num_morphisms()) {
        out.push_back(violation("NotTotal", {}, "object or morphism map has the wrong size"));
        return out;
    }
    for (int x = 0; x < C.num_objects(); ++x)
        if (F.obj[x] < 0 || F.obj[x] >= D.num_objects()) out.push_back(violation("NotTotal", {C.object_name(x)}));
    for (int f = 0; f < C.num_morphisms(); ++f)
        if (F.mor[f] < 0 || F.mor[f] >= D.num_morphisms()) out.push_back(violation("NotTotal", {C.morphism_name(f)}));
    if (!out.empty()) return out;
    for (int f = 0; f < C.num_morphisms(); ++f) {
        if (D.dom(F.mor[f]) != F.obj[C.dom(f)] || D.cod(F.mor[f]) != F.obj[C.cod(f)]) {
            if (C.is_identity(f)) out.push_back(violation("BreaksIdentity", {C.object_name(C.dom(f))}, "identity image has the wrong type"));
            else out.push_back(violation("BreaksComposition", {C.morphism_name(f)}, "image has the wrong domain or codomain"));
        }
    }
    if (!out.empty()) return out;
    for (int x = 0; x < C.num_objects(); ++x)
        if (F.mor[C.identity(x)] != D.identity(F.obj[x])) out.push_back(violation("BreaksIdentity", {C.object_name(x)}));
    for (int f = 0; f < C.num_morphisms(); ++f)
        for (int g = 0; g < C.num_morphisms(); ++g)
            if (C.cod(f) == C.dom(g) && F.mor[C.compose(f, g)] != D.compose(F.mor[f], F.mor[g]))
                out.push_back(violation("BreaksComposition", {C.morphism_name(f), C.morphism_name(g)}));
    return out;
}

Functor validate_functor(const FunctorDescription& raw, const CatPtr& dom, const CatPtr& cod)
{
    Functor F{dom, cod, std::vector<ObjId>(dom->num_objects(), -1), std::vector<MorId>(dom->num_morphisms(), -1)};
    std::vector<Violation> out;
    for (const auto& [k, v] : raw.on_objects) {
        auto x = dom->find_object(k);
        auto y = cod->find_object(v);
        if (!x || !y) {
            out.push_back(violation("DanglingReference", {k, v}, "unknown object in on_objects"));
            continue;
        }
        F.obj[*x] = *y;
    }
    for (const auto& [k, v] : raw.on_morphisms) {
        auto f = dom->find_morphism(k);
        auto g = cod->find_morphism(v);
        if (!f || !g) {
            out.push_back(violation("DanglingReference", {k, v}, "unknown morphism in on_morphisms"));
            continue;
        }
        F.mor[*f] = *g;
    }
    if (out.empty()) out = check_functor(F);
    if (!out.empty()) throw ValidationError(std::move(out));
    return F;
}

Functor checked(Functor f)
{
    auto v = check_functor(f);
    if (!v.empty()) throw ValidationError(std::move(v));
    return f;
}

Functor identity_functor(const CatPtr& c)
{
    Functor F{c, c, {}, {}};
    for (int x = 0; x < c->num_objects(); ++x) F.obj.push_back(x);
    for (int f = 0; f < c->num_morphisms(); ++f) F.mor.push_back(f);
    return F;
}

Functor compose(const Functor& f, const Functor& g)
{
    if (!same_category(f.cod, g.dom)) throw ContractError("EndpointMismatch", "cannot compose functors");
    Functor h{f.dom, g.cod, {}, {}};
    for (ObjId x : f.obj) h.obj.push_back(g.obj[x]);
    for (MorId m : f.mor) h.mor.push_back(g.mor[m]);
    return h;
}

Functor opposite(const Functor& f) { return Functor{opposite(f.dom), opposite(f.cod), f.obj, f.mor}; }

Functor empty_functor(const CatPtr& empty, const CatPtr& cod)
{
    if (empty->num_objects() != 0) throw ContractError("EndpointMismatch", "domain is not empty");
    return Functor{empty, cod, {}, {}};
}

Functor constant_functor(const CatPtr& dom, const CatPtr& cod, ObjId x)
{
    Functor F{dom, cod, std::vector<ObjId>(dom->num_objects(), x),
              std::vector<MorId>(dom->num_morphisms(), cod->identity(x))};
    return F;
}

std::vector<Functor> enumerate_functors(const CatPtr& dom, const CatPtr& cod)
{
    return enumerate_functors_where(dom, cod, [](ObjId, ObjId) { return true; }, [](MorId, MorId) { return true; });
}

std::vector<Functor> enumerate_functors_where(const CatPtr& dom, const CatPtr& cod, const ObjFilter& obj_ok,
                                              const MorFilter& mor_ok, std::size_t stop_after)
{
    const auto& C = *dom;
    const auto& D = *cod;
    Search s("enumerate_functors");
    const int no = C.num_objects();
    for (int x = 0; x < no; ++x) {
        std::vector<int> objs;
        for (int y = 0; y < D.num_objects(); ++y)
            if (obj_ok(x, y)) objs.push_back(y);
        s.add_variable(std::move(objs));
    }
    // Morphism variables follow object variables; identities are fixed by their object.
    for (int f = 0; f < C.num_morphisms(); ++f) {
        std::vector<int> mors;
        for (int g = 0; g < D.num_morphisms(); ++g)
            if (mor_ok(f, g)) mors.push_back(g);
        const int v = s.add_variable(std::move(mors));
        const int dv = C.dom(f), cv = C.cod(f);
        const bool ident = C.is_identity(f);
        s.add_constraint({dv, cv, v}, [&D, dv, cv, v, ident](Search::Assignment a) {
            const MorId m = a[v];
            if (D.dom(m) != a[dv] || D.cod(m) != a[cv]) return false;
            return !ident || m == D.identity(a[dv]);
        });
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
        for (int g = 0; g < C.num_morphisms(); ++g) {
            if (C.cod(f) != C.dom(g)) continue;
            const int h = C.compose(f, g);
            const int vf = no + f, vg = no + g, vh = no + h;
            s.add_constraint({vf, vg, vh}, [&D, vf, vg, vh](Search::Assignment a) {
                return D.compose(a[vf], a[vg]) == a[vh];
            });
        }
    }
    std::vector<Functor> out;
    s.for_each([&](Search::Assignment a) {
        Functor F{dom, cod, std::vector<ObjId>(a.begin(), a.begin() + no), std::vector<MorId>(a.begin() + no, a.end())};
        out.push_back(std::move(F));
        return out.size() < stop_after;
    });
    return out;
}

// ---------------------------------------------------------------------------

bool parallel(const Functor& f, const Functor& g) { return same_category(f.dom, g.dom) && same_category(f.cod, g.cod); }

std::vector<Violation> check_nat_trans(const NatTrans& t)
{
    std::vector<Violation> out;
    const auto& C = *t.source.dom;
    const auto& D = *t.source.cod;
    for (int x = 0; x < C.num_objects(); ++x) {
        const MorId c = t.components.at(x);
        if (D.dom(c) != t.source(x) || D.cod(c) != t.target(x))
            out.push_back(violation("NotTotal", {C.object_name(x)}, "component has the wrong type"));
    }
    if (!out.empty()) return out;
    for (int m = 0; m < C.num_morphisms(); ++m) {
        if (D.compose(t.source.map(m), t.components[C.cod(m)]) != D.compose(t.components[C.dom(m)], t.target.map(m)))
            out.push_back(violation("NaturalityFail", {C.morphism_name(m)}));
    }
    return out;
}

std::vector<NatTrans> enumerate_natural_transformations(const Functor& F, const Functor& G)
{
    if (!parallel(F, G)) throw ContractError("NotParallel", "functors do not share domain and codomain");
    const auto& C = *F.dom;
    const auto& D = *F.cod;
    Search s("enumerate_natural_transformations");
    for (int x = 0; x < C.num_objects(); ++x) {
        auto h = D.hom(F(x), G(x));
        s.add_variable(std::vector<int>(h.begin(), h.end()));
    }
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const int a = C.dom(m), b = C.cod(m);
        const MorId Fm = F.map(m), Gm = G.map(m);
        s.add_constraint({a, b}, [&D, a, b, Fm, Gm](Search::Assignment v) {
            return D.compose(Fm, v[b]) == D.compose(v[a], Gm);
        });
    }
    std::vector<NatTrans> out;
    s.for_each([&](Search::Assignment v) {
        out.push_back(NatTrans{F, G, std::vector<MorId>(v.begin(), v.end())});
        return true;
    });
    return out;
}

std::optional<NatTrans> find_natural_isomorphism(const Functor& F, const Functor& G)
{
    if (!parallel(F, G)) throw ContractError("NotParallel", "functors do not share domain and codomain");
    const auto& C = *F.dom;
    const auto& D = *F.cod;
    Search s("find_natural_isomorphism");
    for (int x = 0; x < C.num_objects(); ++x) {
        std::vector<int> dom;
        for (MorId m : D.hom(F(x), G(x)))
            if (D.is_invertible(m)) dom.push_back(m);
        s.add_variable(std::move(dom));
    }
    for (int m = 0; m < C.num_morphisms(); ++m) {
        const int a = C.dom(m), b = C.cod(m);
        const MorId Fm = F.map(m), Gm = G.map(m);
        s.add_constraint({a, b}, [&D, a, b, Fm, Gm](Search::Assignment v) {
            return D.compose(Fm, v[b]) == D.compose(v[a], Gm);
        });
    }
    std::optional<NatTrans> found;
    s.for_each([&](Search::Assignment v) {
        found = NatTrans{F, G, std::vector<MorId>(v.begin(), v.end())};
        return false;
    });
    return found;
}

// ---------------------------------------------------------------------------

FunctorClassification classify_functor(const Functor& F)
{
    FunctorClassification k;
    const auto& C = *F.dom;
    const auto& D = *F.cod;
    auto fail = [&k](bool& flag, const char* name, std::vector<std::string> w) {
        if (flag) k.witnesses[name] = std::move(w);
        flag = false;
    };

    for (int x = 0; x < C.num_objects() && k.faithful; ++x) {
        for (int y = 0; y < C.num_objects() && k.faithful; ++y) {
            std::map<MorId, MorId> seen;
            for (MorId f : C.hom(x, y)) {
                auto [it, fresh] = seen.emplace(F.map(f), f);
                if (!fresh) {
                    fail(k.faithful, "faithful", {C.morphism_name(it->second), C.morphism_name(f)});
                    break;
                }
            }
        }
    }
    for (int x = 0; x < C.num_objects() && k.full; ++x) {
        for (int y = 0; y < C.num_objects() && k.full; ++y) {
            std::set<MorId> image;
            for (MorId f : C.hom(x, y)) image.insert(F.map(f));
            for (MorId g : D.hom(F(x), F(y))) {
                if (!image.count(g)) {
                    fail(k.full, "full", {C.object_name(x), C.object_name(y), D.morphism_name(g)});
                    break;
                }
            }
        }
    }
    for (int d = 0; d < D.num_objects(); ++d) {
        bool hit = false;
        for (int x = 0; x < C.num_objects() && !hit; ++x) hit = D.isomorphic(F(x), d);
        if (!hit) {
            fail(k.essentially_surjective, "essentially_surjective", {D.object_name(d)});
            break;
        }
    }
    {
        std::vector<int> hits(D.num_objects(), 0);
        for (ObjId y : F.obj) ++hits[y];
        for (int d = 0; d < D.num_objects(); ++d) {
            if (hits[d] != 1) {
                fail(k.bijective_on_objects, "bijective_on_objects", {D.object_name(d)});
                break;
            }
        }
    }
    {
        std::vector<int> hits(D.num_morphisms(), 0);
        for (MorId g : F.mor) ++hits[g];
        for (int g = 0; g < D.num_morphisms(); ++g) {
            if (hits[g] != 1) {
                fail(k.bijective_on_morphisms, "bijective_on_morphisms", {D.morphism_name(g)});
                break;
            }
        }
    }
    for (int f = 0; f < C.num_morphisms(); ++f) {
        if (D.is_invertible(F.map(f)) && !C.is_invertible(f)) {
            fail(k.conservative, "conservative", {C.morphism_name(f)});
            break;
        }
    }
    k.is_iso = k.bijective_on_objects && k.bijective_on_morphisms;
    if (!k.is_iso) k.witnesses["is_iso"] = {};
    k.is_equivalence = k.full && k.faithful && k.essentially_surjective;
    if (!k.is_equivalence) k.witnesses["is_equivalence"] = {};
    return k;
}

std::optional<Functor> quasi_inverse(const Functor& F)
{
    auto k = classify_functor(F);
    if (!k.is_equivalence) return std::nullopt;
    const auto& C = *F.dom;
    const auto& D = *F.cod;
    Functor G{F.cod, F.dom, std::vector<ObjId>(D.num_objects(), -1), std::vector<MorId>(D.num_morphisms(), -1)};
    std::vector<MorId> iso(D.num_objects(), -1); // iso_d : F(G d) -> d
    for (int d = 0; d < D.num_objects(); ++d) {
        for (int x = 0; x < C.num_objects() && G.obj[d] < 0; ++x) {
            for (MorId m : D.hom(F(x), d)) {
                if (D.is_invertible(m)) {
                    G.obj[d] = x;
                    iso[d] = m;
                    break;
                }
            }
        }
    }
    for (int m = 0; m < D.num_morphisms(); ++m) {
        const int a = D.dom(m), b = D.cod(m);
        const MorId target = D.compose(D.compose(iso[a], m), *D.inverse(iso[b]));
        for (MorId f : C.hom(G.obj[a], G.obj[b])) {
            if (F.map(f) == target) {
                G.mor[m] = f;
                break;
            }
        }
    }
    return checked(std::move(G));
}

} // namespace relmon
