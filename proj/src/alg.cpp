#include "relmon/alg.hpp"

#include "relmon/search.hpp"

#include <algorithm>
#include <set>

namespace relmon {

namespace {

Violation law(const std::string& name, std::vector<std::string> witness)
{
    witness.insert(witness.begin(), name);
    return Violation{"LawFail", std::move(witness), {}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

// Short label for an algebra over any domain: carrier objects, then α values.
std::string algebra_label(const Algebra& alg)
{
    const auto& E = *alg.e.cod;
    std::vector<std::string> objs, vals;
    for (ObjId x : alg.e.obj) objs.push_back(E.object_name(x));
    for (const auto& row : alg.alpha)
        for (MorId m : row) vals.push_back(E.morphism_name(m));
    return "(" + join(objs, ",") + ")/" + join(vals, ",");
}

Distributor carrier_hom(const Algebra& source, const Algebra& target)
{
    return restrict_distributor(hom_distributor(source.e.cod), source.e, target.e);
}

std::pair<ObjId, ObjId> key_ends(const std::vector<int>& key, std::size_t n)
{
    return {key[0], key[n]};
}

} // namespace

bool operator==(const Algebra& a, const Algebra& b)
{
    return a.e == b.e && a.alpha == b.alpha;
}

std::vector<Violation> check_algebra(const RelativeMonad& T, const Algebra& alg)
{
    std::vector<Violation> out;
    const auto& j = T.j;
    const auto& t = T.t;
    const auto& e = alg.e;
    if (!same_category(e.cod, j.cod)) {
        out.push_back(Violation{"EndpointMismatch", {}, "carrier does not land in the monad's codomain"});
        return out;
    }
    const auto& A = *j.dom;
    const auto& D = *e.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects(), nd = D.num_objects();
    bool shaped = static_cast<int>(alg.alpha.size()) == na * nd;
    for (int a = 0; shaped && a < na; ++a)
        for (int d = 0; shaped && d < nd; ++d) {
            const auto& row = alg.alpha[a * nd + d];
            shaped = row.size() == E.hom(j(a), e(d)).size();
            for (MorId m : row) shaped = shaped && m >= 0 && m < E.num_morphisms() && E.dom(m) == t(a) && E.cod(m) == e(d);
        }
    if (!shaped) {
        out.push_back(Violation{"NotTotal", {}, "action table has the wrong shape"});
        return out;
    }

    for (int h = 0; h < A.num_morphisms(); ++h) {
        const ObjId a2 = A.dom(h), a = A.cod(h);
        for (int d = 0; d < nd; ++d)
            for (MorId f : E.hom(j(a), e(d)))
                if (alg.act(a2, d, E.compose(j.map(h), f)) != E.compose(t.map(h), alg.act(a, d, f)))
                    out.push_back(law("binaturality", {A.morphism_name(h), E.morphism_name(f)}));
    }
    for (int k = 0; k < D.num_morphisms(); ++k) {
        const ObjId d = D.dom(k), d2 = D.cod(k);
        for (int a = 0; a < na; ++a)
            for (MorId f : E.hom(j(a), e(d)))
                if (alg.act(a, d2, E.compose(f, e.map(k))) != E.compose(alg.act(a, d, f), e.map(k)))
                    out.push_back(law("binaturality", {E.morphism_name(f), D.morphism_name(k)}));
    }
    for (int a = 0; a < na; ++a)
        for (int d = 0; d < nd; ++d)
            for (MorId f : E.hom(j(a), e(d)))
                if (E.compose(T.unit[a], alg.act(a, d, f)) != f)
                    out.push_back(law("unit", {A.object_name(a), E.morphism_name(f)}));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int d = 0; d < nd; ++d)
                for (MorId g : E.hom(j(a), t(b)))
                    for (MorId f : E.hom(j(b), e(d))) {
                        const MorId af = alg.act(b, d, f);
                        if (alg.act(a, d, E.compose(g, af)) != E.compose(T.extend(a, b, g), af))
                            out.push_back(law("compatibility", {E.morphism_name(g), E.morphism_name(f)}));
                    }
    return out;
}

std::vector<Algebra> enumerate_algebra_structures(const RelativeMonad& T, const Functor& e)
{
    const auto& j = T.j;
    const auto& t = T.t;
    if (!same_category(e.cod, j.cod)) throw ContractError("EndpointMismatch", "carrier does not land in the monad's codomain");
    const auto& A = *j.dom;
    const auto& D = *e.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects(), nd = D.num_objects();
    Search s("enumerate_algebras");
    // var[a * nd + d][hom_index(f)]
    std::vector<std::vector<int>> var(static_cast<std::size_t>(na) * nd);
    for (int a = 0; a < na; ++a)
        for (int d = 0; d < nd; ++d) {
            auto dom = E.hom(t(a), e(d));
            for (MorId f : E.hom(j(a), e(d))) {
                // unit law fixes the admissible values up front
                std::vector<int> ok;
                for (MorId m : dom)
                    if (E.compose(T.unit[a], m) == f) ok.push_back(m);
                var[a * nd + d].push_back(s.add_variable(std::move(ok)));
            }
        }
    auto v_of = [&](int a, int d, MorId f) { return var[a * nd + d][E.hom_index(f)]; };

    for (int h = 0; h < A.num_morphisms(); ++h) {
        if (A.is_identity(h)) continue;
        const ObjId a2 = A.dom(h), a = A.cod(h);
        const MorId jh = j.map(h), th = t.map(h);
        for (int d = 0; d < nd; ++d)
            for (MorId f : E.hom(j(a), e(d))) {
                const int vf = v_of(a, d, f), vg = v_of(a2, d, E.compose(jh, f));
                s.add_constraint({vf, vg}, [&E, th, vf, vg](Search::Assignment v) { return v[vg] == E.compose(th, v[vf]); });
            }
    }
    for (int k = 0; k < D.num_morphisms(); ++k) {
        if (D.is_identity(k)) continue;
        const ObjId d = D.dom(k), d2 = D.cod(k);
        const MorId ek = e.map(k);
        for (int a = 0; a < na; ++a)
            for (MorId f : E.hom(j(a), e(d))) {
                const int vf = v_of(a, d, f), vg = v_of(a, d2, E.compose(f, ek));
                s.add_constraint({vf, vg}, [&E, ek, vf, vg](Search::Assignment v) { return v[vg] == E.compose(v[vf], ek); });
            }
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int d = 0; d < nd; ++d) {
                const auto* block = &var[a * nd + d];
                for (MorId g : E.hom(j(a), t(b))) {
                    const MorId tg = T.extend(a, b, g);
                    for (MorId f : E.hom(j(b), e(d))) {
                        const int vf = v_of(b, d, f);
                        std::vector<int> scope = *block;
                        scope.push_back(vf);
                        s.add_constraint(scope, [&E, block, g, tg, vf](Search::Assignment v) {
                            return v[(*block)[E.hom_index(E.compose(g, v[vf]))]] == E.compose(tg, v[vf]);
                        });
                    }
                }
            }

    std::vector<Algebra> out;
    s.for_each([&](Search::Assignment v) {
        Algebra alg{e, std::vector<std::vector<MorId>>(var.size())};
        for (std::size_t i = 0; i < var.size(); ++i)
            for (int x : var[i]) alg.alpha[i].push_back(v[x]);
        out.push_back(std::move(alg));
        return true;
    });
    return out;
}

std::vector<Algebra> enumerate_algebras(const RelativeMonad& T, const CatPtr& D)
{
    std::vector<Algebra> out;
    for (const auto& e : enumerate_functors(D, T.j.cod)) {
        auto part = enumerate_algebra_structures(T, e);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

Algebra restrict_algebra(const Algebra& alg, const Functor& x)
{
    if (!same_category(x.cod, alg.e.dom)) throw ContractError("EndpointMismatch", "restriction does not land in the algebra's domain");
    const int nd = alg.nd();
    const int nd2 = x.dom->num_objects();
    const int na = nd == 0 ? 0 : static_cast<int>(alg.alpha.size()) / nd;
    Algebra out{compose(x, alg.e), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * nd2)};
    for (int a = 0; a < na; ++a)
        for (int d = 0; d < nd2; ++d) out.alpha[a * nd2 + d] = alg.alpha[a * nd + x(d)];
    return out;
}

std::vector<GradedMorphism> enumerate_graded_morphisms(const RelativeMonad& T, const Algebra& source, const Algebra& target,
                                                       const std::vector<Distributor>& chain)
{
    const auto& E = *T.j.cod;
    const auto& A = *T.j.dom;
    const std::size_t n = chain.size();
    std::vector<GradedMorphism> out;
    for (auto& cell : enumerate_graded_cells(chain, carrier_hom(source, target))) {
        bool ok = true;
        for (const auto& [key, val] : cell.components) {
            const auto [x0, xn] = key_ends(key, n);
            const MorId m = E.hom(source.e(x0), target.e(xn))[val];
            for (int a = 0; ok && a < A.num_objects(); ++a)
                for (MorId g : E.hom(T.j(a), source.e(x0)))
                    if (target.act(a, xn, E.compose(g, m)) != E.compose(source.act(a, x0, g), m)) {
                        ok = false;
                        break;
                    }
            if (!ok) break;
        }
        if (ok) out.push_back(GradedMorphism{std::move(cell)});
    }
    return out;
}

MorId graded_component(const GradedMorphism& g, const Algebra& source, const Algebra& target, const std::vector<int>& key)
{
    const auto [x0, xn] = key_ends(key, g.cell.chain.size());
    return source.e.cod->hom(source.e(x0), target.e(xn))[g.cell.at(key)];
}

// ---------------------------------------------------------------------------

std::optional<MorId> AlgebraCategory::lift(ObjId source, ObjId target, MorId h) const
{
    auto it = over.find({source, target, h});
    if (it == over.end()) return std::nullopt;
    return it->second;
}

std::optional<ObjId> AlgebraCategory::find(const Algebra& alg) const
{
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i].e.obj == alg.e.obj && objects[i].alpha == alg.alpha) return static_cast<ObjId>(i);
    return std::nullopt;
}

std::string algebra_name(const RelativeMonad& T, const Algebra& alg)
{
    const auto& E = *T.j.cod;
    std::vector<std::string> vals;
    for (const auto& row : alg.alpha)
        for (MorId m : row) vals.push_back(E.morphism_name(m));
    return E.object_name(alg.e(0)) + "/" + join(vals, ",");
}

AlgebraCategory build_algebra_category(const RelativeMonad& T)
{
    const auto& E = *T.j.cod;
    const auto& A = *T.j.dom;
    const int na = A.num_objects();
    AlgebraCategory out;
    out.T = T;
    out.objects = enumerate_algebras(T, terminal_category());
    const int n = static_cast<int>(out.objects.size());

    CategoryDescription desc;
    std::set<std::string> used;
    for (const auto& alg : out.objects) {
        std::string name = algebra_name(T, alg);
        if (used.count(name)) {
            int k = 2;
            while (used.count(name + "#" + std::to_string(k))) ++k;
            name += "#" + std::to_string(k);
        }
        used.insert(name);
        desc.objects.push_back(name);
    }
    // (source, target) -> morphisms of E that are algebra maps
    std::vector<std::vector<MorId>> maps(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const auto& si = out.objects[i];
            const auto& sk = out.objects[k];
            for (MorId h : E.hom(si.e(0), sk.e(0))) {
                bool ok = true;
                for (int a = 0; ok && a < na; ++a)
                    for (MorId g : E.hom(T.j(a), si.e(0)))
                        if (sk.act(a, 0, E.compose(g, h)) != E.compose(si.act(a, 0, g), h)) {
                            ok = false;
                            break;
                        }
                if (!ok) continue;
                maps[i * n + k].push_back(h);
            }
        }
    auto mname = [&](int i, int k, MorId h) {
        return E.morphism_name(h) + "[" + std::to_string(i) + "," + std::to_string(k) + "]";
    };
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (MorId h : maps[i * n + k]) desc.morphisms.push_back({mname(i, k, h), desc.objects[i], desc.objects[k]});
    for (int i = 0; i < n; ++i) desc.identities[desc.objects[i]] = mname(i, i, E.identity(out.objects[i].e(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (MorId h1 : maps[i * n + k])
                for (int l = 0; l < n; ++l)
                    for (MorId h2 : maps[k * n + l])
                        desc.composition[{mname(i, k, h1), mname(k, l, h2)}] = mname(i, l, E.compose(h1, h2));
    out.cat = make_category(desc);
    const auto& M = *out.cat;

    out.u = Functor{out.cat, T.j.cod, std::vector<ObjId>(n), std::vector<MorId>(M.num_morphisms())};
    for (int i = 0; i < n; ++i) out.u.obj[i] = out.objects[i].e(0);
    {
        MorId idx = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (MorId h : maps[i * n + k]) {
                    out.u.mor[idx] = h;
                    out.over[{i, k, h}] = idx;
                    ++idx;
                }
    }

    out.generic = Algebra{out.u, std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * n)};
    for (int a = 0; a < na; ++a)
        for (int m = 0; m < n; ++m) out.generic.alpha[a * n + m] = out.objects[m].alpha[a];

    // free algebras
    out.f = Functor{T.j.dom, out.cat, std::vector<ObjId>(na), std::vector<MorId>(A.num_morphisms())};
    for (int a = 0; a < na; ++a) {
        Algebra free{constant_functor(terminal_category(), T.j.cod, T.t(a)), std::vector<std::vector<MorId>>(na)};
        for (int b = 0; b < na; ++b)
            for (MorId g : E.hom(T.j(b), T.t(a))) free.alpha[b].push_back(T.extend(b, a, g));
        auto idx = out.find(free);
        if (!idx) throw ContractError("EngineBug", "free algebra missing from Alg(T)");
        out.f.obj[a] = *idx;
    }
    for (int h = 0; h < A.num_morphisms(); ++h) {
        auto m = out.lift(out.f(A.dom(h)), out.f(A.cod(h)), T.t.map(h));
        if (!m) throw ContractError("EngineBug", "t h is not an algebra map between free algebras");
        out.f.mor[h] = *m;
    }

    std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(na) * n);
    for (int a = 0; a < na; ++a)
        for (int m = 0; m < n; ++m)
            for (MorId k : M.hom(out.f(a), m)) sharp[a * n + m].push_back(E.compose(T.unit[a], out.u.map(k)));
    out.adjunction = assemble_adjunction(T.j, out.f, out.u, std::move(sharp));
    return out;
}

Algebra resolution_algebra(const RelativeAdjunction& adj)
{
    const auto& E = *adj.j.cod;
    const int na = adj.j.dom->num_objects();
    const int nc = adj.nc();
    Algebra out{adj.r, std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * nc)};
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c)
            for (MorId f : E.hom(adj.j(a), adj.r(c))) out.alpha[a * nc + c].push_back(adj.r.map(adj.flat_of(a, c, f)));
    return out;
}

std::vector<Functor> algebra_lifts(const Algebra& generic, const Algebra& alg, std::size_t stop_after)
{
    if (!same_category(generic.e.cod, alg.e.cod)) throw ContractError("EndpointMismatch", "algebras over different categories");
    const auto& M = generic.e.dom;
    const auto& D = alg.e.dom;
    const int nd = D->num_objects(), nm = M->num_objects();
    const int na = nd == 0 ? 0 : static_cast<int>(alg.alpha.size()) / nd;
    std::vector<char> ok(static_cast<std::size_t>(nd) * nm, 0);
    for (int d = 0; d < nd; ++d)
        for (int m = 0; m < nm; ++m) {
            bool same = generic.e(m) == alg.e(d);
            for (int a = 0; same && a < na; ++a) same = generic.alpha[a * nm + m] == alg.alpha[a * nd + d];
            ok[d * nm + m] = same;
        }
    return enumerate_functors_where(
        D, M, [&](ObjId d, ObjId m) { return ok[d * nm + m] != 0; },
        [&](MorId h, MorId k) { return generic.e.map(k) == alg.e.map(h); }, stop_after);
}

ComparisonData comparison_functor(const RelativeAdjunction& adj, const AlgebraCategory& algcat)
{
    if (!(monad_from_adjunction(adj) == algcat.T))
        throw ContractError("MonadMismatch", "the resolution does not induce this monad");
    const auto& C = adj.r.dom;
    const Algebra alg = resolution_algebra(adj);
    ComparisonData out;
    out.K = Functor{C, algcat.cat, std::vector<ObjId>(C->num_objects()), std::vector<MorId>(C->num_morphisms())};
    for (int c = 0; c < C->num_objects(); ++c) {
        auto idx = algcat.find(restrict_algebra(alg, constant_functor(terminal_category(), C, c)));
        if (!idx) throw ContractError("EngineBug", "restricted resolution algebra missing from Alg(T)");
        out.K.obj[c] = *idx;
    }
    for (int k = 0; k < C->num_morphisms(); ++k) {
        auto m = algcat.lift(out.K(C->dom(k)), out.K(C->cod(k)), adj.r.map(k));
        if (!m) throw ContractError("EngineBug", "r k is not an algebra map");
        out.K.mor[k] = *m;
    }
    out.commutes_with_forgetful = compose(out.K, algcat.u) == adj.r;
    out.commutes_with_free = compose(adj.l, out.K) == algcat.f;
    out.lift_count = algebra_lifts(algcat.generic, alg, 2).size();
    out.unique = out.lift_count == 1 && algebra_lifts(algcat.generic, alg, 1).front() == out.K;
    return out;
}

// ---------------------------------------------------------------------------

AlgebraObjectBounds default_algebra_object_bounds()
{
    CategoryDescription interval;
    interval.objects = {"0", "1"};
    interval.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"i", "0", "1"}};
    interval.identities = {{"0", "id0"}, {"1", "id1"}};
    interval.composition = {{{"id0", "id0"}, "id0"}, {{"id1", "id1"}, "id1"}, {{"id0", "i"}, "i"}, {{"i", "id1"}, "i"}};
    AlgebraObjectBounds b;
    b.shapes = {empty_category(), terminal_category(), make_category(interval)};
    b.grade_shapes = {terminal_category()};
    b.grade_bound = 1;
    b.element_cap = 2;
    return b;
}

AlgebraObjectReport verify_algebra_object(const Algebra& candidate, const RelativeMonad& T, const AlgebraObjectBounds& bounds)
{
    AlgebraObjectReport rep;
    rep.grade_bound = bounds.grade_bound;
    rep.violations = check_algebra(T, candidate);
    rep.precheck = rep.violations.empty();
    if (!rep.precheck) return rep;

    const auto& E = *T.j.cod;
    rep.clause1 = true;
    for (const auto& D : bounds.shapes)
        for (const auto& alg : enumerate_algebras(T, D)) {
            ++rep.algebras_checked;
            const std::size_t n = algebra_lifts(candidate, alg, 2).size();
            if (n != 1) {
                rep.clause1 = false;
                rep.violations.push_back(Violation{"Clause1", {algebra_label(alg), std::to_string(n)},
                                                   "algebra does not factor uniquely through the candidate"});
            }
        }

    rep.clause2 = true;
    const Distributor homM = hom_distributor(candidate.e.dom);
    for (const auto& D : bounds.grade_shapes)
        for (const auto& D2 : bounds.grade_shapes) {
            std::vector<std::vector<Distributor>> chains;
            if (same_category(D, D2)) chains.push_back({});
            if (bounds.grade_bound >= 1)
                for (auto& p : enumerate_distributors(D2, D, bounds.element_cap)) chains.push_back({p});
            if (bounds.grade_bound >= 2)
                for (const auto& X1 : bounds.grade_shapes)
                    for (auto& p1 : enumerate_distributors(X1, D, bounds.element_cap))
                        for (auto& p2 : enumerate_distributors(D2, X1, bounds.element_cap)) chains.push_back({p1, p2});
            const auto algs = enumerate_algebras(T, D);
            const auto algs2 = enumerate_algebras(T, D2);
            for (const auto& A1 : algs)
                for (const auto& A2 : algs2) {
                    auto l1 = algebra_lifts(candidate, A1, 2);
                    auto l2 = algebra_lifts(candidate, A2, 2);
                    if (l1.size() != 1 || l2.size() != 1) continue; // already reported by clause 1
                    for (const auto& chain : chains) {
                        const auto morphisms = enumerate_graded_morphisms(T, A1, A2, chain);
                        const auto cells = enumerate_graded_cells(chain, l1[0], l2[0], homM);
                        rep.morphisms_checked += morphisms.size();
                        std::map<std::map<std::vector<int>, int>, int> hits;
                        const std::size_t n = chain.size();
                        for (const auto& cell : cells) {
                            std::map<std::vector<int>, int> image;
                            for (const auto& [key, val] : cell.components) {
                                const auto [x0, xn] = key_ends(key, n);
                                const auto& Mc = *candidate.e.dom;
                                const MorId m = Mc.hom(l1[0](x0), l2[0](xn))[val];
                                image[key] = E.hom_index(candidate.e.map(m));
                            }
                            ++hits[image];
                        }
                        bool ok = cells.size() == morphisms.size();
                        for (const auto& g : morphisms) {
                            auto it = hits.find(g.cell.components);
                            if (it == hits.end() || it->second != 1) ok = false;
                        }
                        if (!ok) {
                            rep.clause2 = false;
                            rep.violations.push_back(Violation{
                                "Clause2",
                                {algebra_label(A1), algebra_label(A2), std::to_string(n), std::to_string(morphisms.size()),
                                 std::to_string(cells.size())},
                                "graded morphisms do not factor uniquely through the candidate"});
                        }
                    }
                }
        }
    rep.passed = rep.precheck && rep.clause1 && rep.clause2;
    return rep;
}

// ---------------------------------------------------------------------------

RelativeMonad postcompose_monad(const RelativeMonad& T, const AlgebraCategory& base)
{
    if (!(T.j == base.f)) throw ContractError("RootMismatch", "the monad's root is not the free functor");
    const auto& adj = base.adjunction;
    const auto& E = *base.T.j.cod;
    const int na = T.na();
    RelativeMonad S{base.T.j, compose(T.t, base.u), std::vector<MorId>(na), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * na)};
    for (int a = 0; a < na; ++a) {
        S.unit[a] = adj.sharp_of(a, T.unit[a]);
        for (int b = 0; b < na; ++b)
            for (MorId g : E.hom(S.j(a), S.t(b)))
                S.ext[a * na + b].push_back(base.u.map(T.extend(a, b, adj.flat_of(a, T.t(b), g))));
    }
    return S;
}

Algebra transport_forward(const Algebra& alg, const AlgebraCategory& base, const RelativeMonad& T)
{
    const auto& adj = base.adjunction;
    const auto& E = *base.T.j.cod;
    const int na = T.na();
    const int nd = alg.nd();
    Algebra out{compose(alg.e, base.u), std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * nd)};
    for (int a = 0; a < na; ++a)
        for (int d = 0; d < nd; ++d)
            for (MorId g : E.hom(base.T.j(a), out.e(d)))
                out.alpha[a * nd + d].push_back(base.u.map(alg.act(a, d, adj.flat_of(a, alg.e(d), g))));
    return out;
}

std::optional<Algebra> transport_backward(const Algebra& alg, const AlgebraCategory& base, const RelativeMonad& T)
{
    const auto& E = *base.T.j.cod;
    const auto& M = *base.cat;
    const int na = T.na();
    const int nd = alg.nd();
    Algebra beta{alg.e, std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * nd)};
    for (int a = 0; a < na; ++a) {
        const MorId ueta = base.u.map(T.unit[a]);
        for (int d = 0; d < nd; ++d)
            for (MorId h : E.hom(base.T.t(a), alg.e(d))) beta.alpha[a * nd + d].push_back(E.compose(ueta, alg.act(a, d, h)));
    }
    auto lifts = algebra_lifts(base.generic, beta, 2);
    if (lifts.size() != 1) return std::nullopt;
    Algebra out{lifts[0], std::vector<std::vector<MorId>>(static_cast<std::size_t>(na) * nd)};
    for (int a = 0; a < na; ++a)
        for (int d = 0; d < nd; ++d)
            for (MorId k : M.hom(T.j(a), out.e(d))) {
                const MorId v = alg.act(a, d, E.compose(base.T.unit[a], base.u.map(k)));
                auto m = base.lift(T.t(a), out.e(d), v);
                if (!m) return std::nullopt;
                out.alpha[a * nd + d].push_back(*m);
            }
    return out;
}

TransportReport transport_algebras(const AlgebraCategory& base, const RelativeMonad& T, const std::vector<CatPtr>& domains,
                                   const std::vector<Distributor>& grades)
{
    if (!(T.j == base.f)) throw ContractError("RootMismatch", "the monad's root is not the free functor");
    const RelativeMonad S = postcompose_monad(T, base);
    const auto& E = *base.T.j.cod;
    const auto& M = *base.cat;
    TransportReport rep;
    rep.forward_bijective = true;
    rep.round_trips = true;
    for (auto& v : check_relative_monad(S)) {
        v.witness.insert(v.witness.begin(), "composite");
        rep.violations.push_back(std::move(v));
    }

    std::vector<std::vector<Algebra>> ts, ss, fw;
    for (const auto& D : domains) {
        ts.push_back(enumerate_algebras(T, D));
        ss.push_back(enumerate_algebras(S, D));
        rep.algebras += ts.back().size();
        rep.composite_algebras += ss.back().size();
        std::vector<Algebra> images;
        for (const auto& A : ts.back()) {
            images.push_back(transport_forward(A, base, T));
            auto back = transport_backward(images.back(), base, T);
            if (!back || !(*back == A)) {
                rep.round_trips = false;
                rep.violations.push_back(Violation{"RoundTrip", {"algebra", algebra_label(A)}, "backward after forward is not the identity"});
            }
        }
        for (std::size_t i = 0; i < images.size(); ++i) {
            const bool hit = std::find(ss.back().begin(), ss.back().end(), images[i]) != ss.back().end();
            const bool dup = std::find(images.begin(), images.begin() + static_cast<long>(i), images[i]) != images.begin() + static_cast<long>(i);
            if (!hit || dup) {
                rep.forward_bijective = false;
                rep.violations.push_back(Violation{"NotBijective", {"algebra", algebra_label(images[i])},
                                                   hit ? "two algebras share an image" : "image is not an algebra"});
            }
        }
        if (images.size() != ss.back().size()) {
            rep.forward_bijective = false;
            rep.violations.push_back(Violation{"NotBijective", {"count", std::to_string(images.size()), std::to_string(ss.back().size())},
                                               "algebra counts differ"});
        }
        for (const auto& B : ss.back()) {
            auto back = transport_backward(B, base, T);
            if (!back || !(transport_forward(*back, base, T) == B)) {
                rep.round_trips = false;
                rep.violations.push_back(Violation{"RoundTrip", {"algebra", algebra_label(B)}, "forward after backward is not the identity"});
            }
        }
        fw.push_back(std::move(images));
    }

    for (std::size_t i = 0; i < domains.size(); ++i)
        for (std::size_t k = 0; k < domains.size(); ++k) {
            std::vector<std::vector<Distributor>> chains;
            if (same_category(domains[i], domains[k])) chains.push_back({});
            for (const auto& p : grades)
                if (same_category(p.tgt, domains[i]) && same_category(p.src, domains[k])) chains.push_back({p});
            for (std::size_t x = 0; x < ts[i].size(); ++x)
                for (std::size_t y = 0; y < ts[k].size(); ++y) {
                    const Algebra& A1 = ts[i][x];
                    const Algebra& A2 = ts[k][y];
                    const Algebra& B1 = fw[i][x];
                    const Algebra& B2 = fw[k][y];
                    for (const auto& chain : chains) {
                        const std::size_t n = chain.size();
                        const auto ms = enumerate_graded_morphisms(T, A1, A2, chain);
                        const auto ns = enumerate_graded_morphisms(S, B1, B2, chain);
                        rep.morphisms += ms.size();
                        rep.composite_morphisms += ns.size();
                        std::set<std::map<std::vector<int>, int>> targets;
                        for (const auto& g : ns) targets.insert(g.cell.components);
                        std::set<std::map<std::vector<int>, int>> images;
                        std::set<std::map<std::vector<int>, int>> sources;
                        for (const auto& g : ms) sources.insert(g.cell.components);
                        for (const auto& g : ms) {
                            std::map<std::vector<int>, int> img;
                            for (const auto& [key, val] : g.cell.components) {
                                const auto [x0, xn] = key_ends(key, n);
                                const MorId m = M.hom(A1.e(x0), A2.e(xn))[val];
                                img[key] = E.hom_index(base.u.map(m));
                            }
                            images.insert(img);
                        }
                        if (images.size() != ms.size() || images != targets) {
                            rep.forward_bijective = false;
                            rep.violations.push_back(Violation{"NotBijective", {"morphism", algebra_label(A1), algebra_label(A2),
                                                                                std::to_string(n)},
                                                               "graded morphisms do not correspond"});
                        }
                        // backward: lift each component through u
                        for (const auto& g : ns) {
                            std::map<std::vector<int>, int> back;
                            bool ok = true;
                            for (const auto& [key, val] : g.cell.components) {
                                const auto [x0, xn] = key_ends(key, n);
                                const MorId m = E.hom(B1.e(x0), B2.e(xn))[val];
                                auto l = base.lift(A1.e(x0), A2.e(xn), m);
                                if (!l) {
                                    ok = false;
                                    break;
                                }
                                back[key] = M.hom_index(*l);
                            }
                            if (!ok || !sources.count(back)) {
                                rep.round_trips = false;
                                rep.violations.push_back(Violation{"RoundTrip", {"morphism", algebra_label(B1), algebra_label(B2),
                                                                                 std::to_string(n)},
                                                                   "composite morphism does not lift"});
                            }
                        }
                    }
                }
        }
    rep.passed = rep.violations.empty() && rep.forward_bijective && rep.round_trips;
    return rep;
}

} // namespace relmon
