#include "relmon/relmonad.hpp"

#include "relmon/search.hpp"

namespace relmon {

namespace {

Violation law(const std::string& name, std::vector<std::string> witness)
{
    witness.insert(witness.begin(), name);
    return Violation{"LawFail", std::move(witness), {}};
}

bool in_hom(const FinCategory& C, MorId f, ObjId x, ObjId y)
{
    return f >= 0 && f < C.num_morphisms() && C.dom(f) == x && C.cod(f) == y;
}

} // namespace

bool operator==(const RelativeMonad& a, const RelativeMonad& b)
{
    return a.j == b.j && a.t == b.t && a.unit == b.unit && a.ext == b.ext;
}

std::vector<Violation> check_relative_monad(const RelativeMonad& T)
{
    std::vector<Violation> out;
    const auto& j = T.j;
    const auto& t = T.t;
    if (!parallel(j, t)) {
        out.push_back(Violation{"EndpointMismatch", {}, "root and carrier are not parallel"});
        return out;
    }
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects();
    bool shaped = static_cast<int>(T.unit.size()) == na && static_cast<int>(T.ext.size()) == na * na;
    for (int a = 0; shaped && a < na; ++a) {
        shaped = in_hom(E, T.unit[a], j(a), t(a));
        for (int b = 0; shaped && b < na; ++b) {
            const auto& row = T.ext[a * na + b];
            shaped = row.size() == E.hom(j(a), t(b)).size();
            for (MorId g : row) shaped = shaped && in_hom(E, g, t(a), t(b));
        }
    }
    if (!shaped) {
        out.push_back(Violation{"NotTotal", {}, "unit or extension table has the wrong shape"});
        return out;
    }

    for (int h = 0; h < A.num_morphisms(); ++h) {
        const ObjId a = A.dom(h), a2 = A.cod(h);
        if (E.compose(j.map(h), T.unit[a2]) != E.compose(T.unit[a], t.map(h)))
            out.push_back(law("unit_naturality", {A.morphism_name(h)}));
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (MorId f : E.hom(j(a), t(b)))
                for (int h = 0; h < A.num_morphisms(); ++h) {
                    if (A.cod(h) != a) continue;
                    for (int k = 0; k < A.num_morphisms(); ++k) {
                        if (A.dom(k) != b) continue;
                        const MorId lhs = T.extend(A.dom(h), A.cod(k), E.compose(E.compose(j.map(h), f), t.map(k)));
                        const MorId rhs = E.compose(E.compose(t.map(h), T.extend(a, b, f)), t.map(k));
                        if (lhs != rhs)
                            out.push_back(law("binaturality", {A.morphism_name(h), E.morphism_name(f), A.morphism_name(k)}));
                    }
                }
    for (int a = 0; a < na; ++a)
        if (T.extend(a, a, T.unit[a]) != E.identity(t(a))) out.push_back(law("left_unit", {A.object_name(a)}));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (MorId f : E.hom(j(a), t(b)))
                if (E.compose(T.unit[a], T.extend(a, b, f)) != f)
                    out.push_back(law("right_unit", {A.object_name(a), E.morphism_name(f)}));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int c = 0; c < na; ++c)
                for (MorId f : E.hom(j(a), t(b)))
                    for (MorId g : E.hom(j(b), t(c))) {
                        const MorId eg = T.extend(b, c, g);
                        if (T.extend(a, c, E.compose(f, eg)) != E.compose(T.extend(a, b, f), eg))
                            out.push_back(law("associativity", {E.morphism_name(f), E.morphism_name(g)}));
                    }
    return out;
}

RelativeMonad validate_relative_monad(const Functor& j, const Functor& t, const MonadDescription& raw)
{
    if (!parallel(j, t)) throw ValidationError({Violation{"EndpointMismatch", {}, "root and carrier are not parallel"}});
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects();
    RelativeMonad T{j, t, std::vector<MorId>(na, -1), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * na)};
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) T.ext[a * na + b].assign(E.hom(j(a), t(b)).size(), -1);
    std::vector<Violation> out;
    for (const auto& [an, mn] : raw.unit) {
        auto a = A.find_object(an);
        auto m = E.find_morphism(mn);
        if (!a || !m) {
            out.push_back(Violation{"DanglingReference", {an, mn}, "bad unit entry"});
            continue;
        }
        T.unit[*a] = *m;
    }
    for (const auto& [key, gn] : raw.ext) {
        const auto& [an, bn, fn] = key;
        auto a = A.find_object(an);
        auto b = A.find_object(bn);
        auto f = E.find_morphism(fn);
        auto g = E.find_morphism(gn);
        if (!a || !b || !f || !g || !in_hom(E, *f, j(*a), t(*b))) {
            out.push_back(Violation{"DanglingReference", {an, bn, fn, gn}, "bad extension entry"});
            continue;
        }
        T.ext[*a * na + *b][E.hom_index(*f)] = *g;
    }
    for (int a = 0; a < na; ++a) {
        if (T.unit[a] < 0) out.push_back(Violation{"NotTotal", {A.object_name(a)}, "missing unit"});
        for (int b = 0; b < na; ++b)
            for (std::size_t i = 0; i < T.ext[a * na + b].size(); ++i)
                if (T.ext[a * na + b][i] < 0)
                    out.push_back(Violation{"NotTotal", {A.object_name(a), A.object_name(b),
                                                         E.morphism_name(E.hom(j(a), t(b))[i])}, "missing extension"});
    }
    if (out.empty()) out = check_relative_monad(T);
    if (!out.empty()) throw ValidationError(std::move(out));
    return T;
}

MonadDescription describe(const RelativeMonad& T)
{
    MonadDescription d;
    const auto& A = *T.j.dom;
    const auto& E = *T.j.cod;
    for (int a = 0; a < A.num_objects(); ++a) {
        d.unit[A.object_name(a)] = E.morphism_name(T.unit[a]);
        for (int b = 0; b < A.num_objects(); ++b)
            for (MorId f : E.hom(T.j(a), T.t(b)))
                d.ext[{A.object_name(a), A.object_name(b), E.morphism_name(f)}] = E.morphism_name(T.extend(a, b, f));
    }
    return d;
}

RelativeMonad monad_from_adjunction(const RelativeAdjunction& adj)
{
    const auto& E = *adj.j.cod;
    const int na = adj.j.dom->num_objects();
    RelativeMonad T{adj.j, compose(adj.l, adj.r), std::vector<MorId>(na), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * na)};
    for (int a = 0; a < na; ++a) {
        T.unit[a] = adj.unit(a);
        for (int b = 0; b < na; ++b)
            for (MorId f : E.hom(adj.j(a), T.t(b))) T.ext[a * na + b].push_back(adj.r.map(adj.flat_of(a, adj.l(b), f)));
    }
    return T;
}

RelativeMonad trivial_relative_monad(const Functor& j)
{
    const auto& E = *j.cod;
    const int na = j.dom->num_objects();
    RelativeMonad T{j, j, std::vector<MorId>(na), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * na)};
    for (int a = 0; a < na; ++a) {
        T.unit[a] = E.identity(j(a));
        for (int b = 0; b < na; ++b) {
            auto h = E.hom(j(a), j(b));
            T.ext[a * na + b].assign(h.begin(), h.end());
        }
    }
    return T;
}

RelativeMonad precompose_root(const RelativeMonad& T, const Functor& j)
{
    if (!same_category(j.cod, T.j.dom)) throw ContractError("EndpointMismatch", "j does not land in the monad's root domain");
    const auto& E = *T.j.cod;
    const int na = j.dom->num_objects();
    RelativeMonad S{compose(j, T.j), compose(j, T.t), std::vector<MorId>(na), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * na)};
    for (int a = 0; a < na; ++a) {
        S.unit[a] = T.unit[j(a)];
        for (int b = 0; b < na; ++b)
            for (MorId f : E.hom(S.j(a), S.t(b))) S.ext[a * na + b].push_back(T.extend(j(a), j(b), f));
    }
    return S;
}

std::vector<RelativeMonad> enumerate_relative_monads(const Functor& j, const Functor& t)
{
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects();
    Search s("enumerate_relative_monads");
    std::vector<int> unit_var(na);
    for (int a = 0; a < na; ++a) {
        auto h = E.hom(j(a), t(a));
        unit_var[a] = s.add_variable({h.begin(), h.end()});
    }
    // ext_var[a * na + b][hom_index(f)]
    std::vector<std::vector<int>> ext_var(static_cast<std::size_t>(na) * na);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            auto dom = E.hom(t(a), t(b));
            for (std::size_t i = 0; i < E.hom(j(a), t(b)).size(); ++i)
                ext_var[a * na + b].push_back(s.add_variable({dom.begin(), dom.end()}));
        }
    auto ev = [&](int a, int b, MorId f) { return ext_var[a * na + b][E.hom_index(f)]; };

    for (int h = 0; h < A.num_morphisms(); ++h) {
        const ObjId a = A.dom(h), a2 = A.cod(h);
        const MorId jh = j.map(h), th = t.map(h);
        const int va = unit_var[a], vb = unit_var[a2];
        s.add_constraint({va, vb}, [&E, jh, th, va, vb](Search::Assignment v) {
            return E.compose(jh, v[vb]) == E.compose(v[va], th);
        });
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (MorId f : E.hom(j(a), t(b))) {
                const int vu = unit_var[a], vf = ev(a, b, f);
                s.add_constraint({vu, vf}, [&E, f, vu, vf](Search::Assignment v) { return E.compose(v[vu], v[vf]) == f; });
                for (int h = 0; h < A.num_morphisms(); ++h) {
                    if (A.cod(h) != a) continue;
                    for (int k = 0; k < A.num_morphisms(); ++k) {
                        if (A.dom(k) != b || (A.is_identity(h) && A.is_identity(k))) continue;
                        const MorId th = t.map(h), tk = t.map(k);
                        const int vg = ev(A.dom(h), A.cod(k), E.compose(E.compose(j.map(h), f), tk));
                        s.add_constraint({vf, vg}, [&E, th, tk, vf, vg](Search::Assignment v) {
                            return v[vg] == E.compose(E.compose(th, v[vf]), tk);
                        });
                    }
                }
            }
    for (int a = 0; a < na; ++a) {
        std::vector<int> scope = ext_var[a * na + a];
        scope.push_back(unit_var[a]);
        const MorId id = E.identity(t(a));
        const auto* block = &ext_var[a * na + a];
        const int vu = unit_var[a];
        s.add_constraint(scope, [&E, block, vu, id](Search::Assignment v) {
            return v[(*block)[E.hom_index(v[vu])]] == id;
        });
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int c = 0; c < na; ++c) {
                const auto* ac = &ext_var[a * na + c];
                for (MorId f : E.hom(j(a), t(b)))
                    for (MorId g : E.hom(j(b), t(c))) {
                        const int vf = ev(a, b, f), vg = ev(b, c, g);
                        std::vector<int> scope = *ac;
                        scope.push_back(vf);
                        scope.push_back(vg);
                        s.add_constraint(scope, [&E, ac, f, vf, vg](Search::Assignment v) {
                            return v[(*ac)[E.hom_index(E.compose(f, v[vg]))]] == E.compose(v[vf], v[vg]);
                        });
                    }
            }

    std::vector<RelativeMonad> out;
    s.for_each([&](Search::Assignment v) {
        RelativeMonad T{j, t, std::vector<MorId>(na), std::vector<std::vector<MorId>>(ext_var.size())};
        for (int a = 0; a < na; ++a) T.unit[a] = v[unit_var[a]];
        for (std::size_t i = 0; i < ext_var.size(); ++i)
            for (int x : ext_var[i]) T.ext[i].push_back(v[x]);
        out.push_back(std::move(T));
        return true;
    });
    return out;
}

std::vector<RelativeMonad> enumerate_relative_monads(const Functor& j)
{
    std::vector<RelativeMonad> out;
    for (const auto& t : enumerate_functors(j.dom, j.cod)) {
        auto part = enumerate_relative_monads(j, t);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

} // namespace relmon
