#pragma once

// Brute-force reference checks over raw tables. Nothing here calls the
// engine's law checkers or enumerators; the engine is only used to read
// composition tables that were validated on their own.

#include <relmon/corpus.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// A category as plain tables; comp[f][g] = f;g or -1 when not composable.
struct Table {
    int objects = 0;
    std::vector<int> dom, cod, id;
    std::vector<std::vector<int>> comp;
};

// Reads a description by name, leaving -1 in every slot that cannot be resolved.
inline Table table_of(const relmon::CategoryDescription& d)
{
    Table t;
    std::map<std::string, int> obj, mor;
    for (const auto& o : d.objects) obj.emplace(o, static_cast<int>(obj.size()));
    for (const auto& m : d.morphisms) mor.emplace(m.name, static_cast<int>(mor.size()));
    auto look = [](const std::map<std::string, int>& m, const std::string& k) {
        auto it = m.find(k);
        return it == m.end() ? -1 : it->second;
    };
    t.objects = static_cast<int>(d.objects.size());
    for (const auto& m : d.morphisms) {
        t.dom.push_back(look(obj, m.dom));
        t.cod.push_back(look(obj, m.cod));
    }
    t.id.assign(t.objects, -1);
    for (const auto& [o, m] : d.identities)
        if (look(obj, o) >= 0) t.id[look(obj, o)] = look(mor, m);
    const std::size_t n = d.morphisms.size();
    t.comp.assign(n, std::vector<int>(n, -1));
    for (const auto& [key, h] : d.composition) {
        const int f = look(mor, key.first), g = look(mor, key.second);
        if (f >= 0 && g >= 0) t.comp[f][g] = look(mor, h);
    }
    return t;
}

// Typing, totality, identities and associativity, all by exhaustion.
inline bool is_category(const Table& t)
{
    const int n = static_cast<int>(t.dom.size());
    for (int f = 0; f < n; ++f)
        if (t.dom[f] < 0 || t.cod[f] < 0) return false;
    for (int x = 0; x < t.objects; ++x) {
        const int i = t.id[x];
        if (i < 0 || t.dom[i] != x || t.cod[i] != x) return false;
    }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            const int h = t.comp[f][g];
            if (t.cod[f] != t.dom[g]) {
                if (h >= 0) return false;
                continue;
            }
            if (h < 0 || t.dom[h] != t.dom[f] || t.cod[h] != t.cod[g]) return false;
        }
    for (int f = 0; f < n; ++f)
        if (t.comp[t.id[t.dom[f]]][f] != f || t.comp[f][t.id[t.cod[f]]] != f) return false;
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (t.cod[f] != t.dom[g]) continue;
            for (int h = 0; h < n; ++h)
                if (t.cod[g] == t.dom[h] && t.comp[t.comp[f][g]][h] != t.comp[f][t.comp[g][h]]) return false;
        }
    return true;
}

inline std::vector<int> hom(const relmon::FinCategory& c, int x, int y)
{
    std::vector<int> out;
    for (int f = 0; f < c.num_morphisms(); ++f)
        if (c.dom(f) == x && c.cod(f) == y) out.push_back(f);
    return out;
}

// Relative monad laws on raw maps: unit[a], ext[{a, b, f}].
using ExtMap = std::map<std::tuple<int, int, int>, int>;

inline bool is_relative_monad(const relmon::Functor& j, const relmon::Functor& t, const std::vector<int>& unit,
                              const ExtMap& ext)
{
    const auto& A = *j.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects();
    auto cmp = [&](int f, int g) { return E.compose(f, g); };
    auto x = [&](int a, int b, int f) {
        auto it = ext.find({a, b, f});
        return it == ext.end() ? -1 : it->second;
    };
    for (int a = 0; a < na; ++a) {
        if (E.dom(unit[a]) != j(a) || E.cod(unit[a]) != t(a)) return false;
        for (int b = 0; b < na; ++b)
            for (int f : hom(E, j(a), t(b))) {
                const int g = x(a, b, f);
                if (g < 0 || E.dom(g) != t(a) || E.cod(g) != t(b)) return false;
                if (cmp(unit[a], g) != f) return false;
            }
        if (x(a, a, unit[a]) != E.identity(t(a))) return false;
    }
    // t on morphisms is (j h ; η)†.
    for (int h = 0; h < A.num_morphisms(); ++h)
        if (x(A.dom(h), A.cod(h), cmp(j.map(h), unit[A.cod(h)])) != t.map(h)) return false;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            for (int c = 0; c < na; ++c)
                for (int f : hom(E, j(a), t(b)))
                    for (int g : hom(E, j(b), t(c)))
                        if (x(a, c, cmp(f, x(b, c, g))) != cmp(x(a, b, f), x(b, c, g))) return false;
    return true;
}

// ♯_{a,c}: C(l a, c) → E(j a, r c), keyed by (a, k).
using SharpMap = std::map<std::pair<int, int>, int>;

inline bool is_relative_adjunction(const relmon::Functor& j, const relmon::Functor& l, const relmon::Functor& r,
                                   const SharpMap& sharp)
{
    const auto& A = *j.dom;
    const auto& C = *l.cod;
    const auto& E = *j.cod;
    auto s = [&](int a, int k) {
        auto it = sharp.find({a, k});
        return it == sharp.end() ? -1 : it->second;
    };
    for (int a = 0; a < A.num_objects(); ++a)
        for (int c = 0; c < C.num_objects(); ++c) {
            std::set<int> image;
            for (int k : hom(C, l(a), c)) {
                const int f = s(a, k);
                if (f < 0 || E.dom(f) != j(a) || E.cod(f) != r(c)) return false;
                image.insert(f);
            }
            if (image.size() != hom(C, l(a), c).size() || image.size() != hom(E, j(a), r(c)).size()) return false;
        }
    // Naturality in both variables: ♯(l h ; k ; m) = j h ; ♯(k) ; r m.
    for (int h = 0; h < A.num_morphisms(); ++h)
        for (int k = 0; k < C.num_morphisms(); ++k) {
            if (C.dom(k) != l(A.cod(h))) continue;
            for (int m = 0; m < C.num_morphisms(); ++m) {
                if (C.dom(m) != C.cod(k)) continue;
                const int lhs = s(A.dom(h), C.compose(C.compose(l.map(h), k), m));
                const int rhs = E.compose(E.compose(j.map(h), s(A.cod(h), k)), r.map(m));
                if (lhs != rhs) return false;
            }
        }
    return true;
}

// Monads on the point root * → BM for a monoid M with table mul (unit 0),
// enumerated as pairs (η, † : M → M). The carrier is forced.
struct PointMonad {
    int eta;
    std::vector<int> ext;
};

inline std::vector<PointMonad> point_monads(const std::vector<std::vector<int>>& mul)
{
    const int n = static_cast<int>(mul.size());
    std::vector<PointMonad> out;
    std::vector<int> ext(n, 0);
    std::function<void(int, int)> go = [&](int eta, int i) {
        if (i == n) {
            bool ok = ext[eta] == 0;
            for (int f = 0; ok && f < n; ++f) ok = mul[eta][ext[f]] == f;
            for (int f = 0; ok && f < n; ++f)
                for (int g = 0; ok && g < n; ++g) ok = ext[mul[f][ext[g]]] == mul[ext[f]][ext[g]];
            if (ok) out.push_back({eta, ext});
            return;
        }
        for (int v = 0; v < n; ++v) {
            ext[i] = v;
            go(eta, i + 1);
        }
    };
    for (int eta = 0; eta < n; ++eta) go(eta, 0);
    return out;
}

// Algebras with carrier the point (D = Terminal): maps α : M → M.
inline std::size_t point_algebra_count(const std::vector<std::vector<int>>& mul, const PointMonad& T)
{
    const int n = static_cast<int>(mul.size());
    std::size_t count = 0;
    std::vector<int> alpha(n, 0);
    std::function<void(int)> go = [&](int i) {
        if (i == n) {
            bool ok = true;
            for (int g = 0; ok && g < n; ++g) ok = mul[T.eta][alpha[g]] == g;
            for (int f = 0; ok && f < n; ++f)
                for (int g = 0; ok && g < n; ++g) ok = alpha[mul[f][alpha[g]]] == mul[T.ext[f]][alpha[g]];
            count += ok;
            return;
        }
        for (int v = 0; v < n; ++v) {
            alpha[i] = v;
            go(i + 1);
        }
    };
    go(0);
    return count;
}

// The monoids whose point roots are pinned in corpus/oracles.
inline std::map<std::string, std::vector<std::vector<int>>> oracle_monoids()
{
    return {
        {"BZ2", {{0, 1}, {1, 0}}},
        {"BM3", {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}},
        {"Idem", {{0, 1}, {1, 1}}},
    };
}

} // namespace oracle
