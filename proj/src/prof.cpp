#include "relmon/prof.hpp"

#include "relmon/search.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace relmon {

namespace {

Violation violation(std::string kind, std::vector<std::string> witness, std::string message = {})
{
    return Violation{std::move(kind), std::move(witness), std::move(message)};
}

int find_root(std::vector<int>& parent, int i)
{
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

void unite(std::vector<int>& parent, int a, int b)
{
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
}

} // namespace

std::size_t Distributor::total_elements() const
{
    std::size_t n = 0;
    for (const auto& c : names) n += c.size();
    return n;
}

bool operator==(const Distributor& a, const Distributor& b)
{
    return same_category(a.src, b.src) && same_category(a.tgt, b.tgt) && a.names == b.names
        && a.pull_table == b.pull_table && a.push_table == b.push_table;
}

std::vector<Violation> check_distributor(const Distributor& p)
{
    std::vector<Violation> out;
    const auto& X = *p.src;
    const auto& Y = *p.tgt;
    const int nx = X.num_objects(), ny = Y.num_objects();
    if (static_cast<int>(p.names.size()) != nx * ny
        || static_cast<int>(p.pull_table.size()) != Y.num_morphisms() * nx
        || static_cast<int>(p.push_table.size()) != X.num_morphisms() * ny) {
        out.push_back(violation("NotTotal", {}, "distributor tables have the wrong shape"));
        return out;
    }
    for (int m = 0; m < Y.num_morphisms(); ++m) {
        for (int x = 0; x < nx; ++x) {
            const auto& row = p.pull_table[m * nx + x];
            const int from = p.size(Y.cod(m), x), to = p.size(Y.dom(m), x);
            bool ok = static_cast<int>(row.size()) == from;
            for (int v : row) ok = ok && v >= 0 && v < to;
            if (!ok) out.push_back(violation("NotTotal", {Y.morphism_name(m), X.object_name(x)}, "right action"));
        }
    }
    for (int n = 0; n < X.num_morphisms(); ++n) {
        for (int y = 0; y < ny; ++y) {
            const auto& row = p.push_table[n * ny + y];
            const int from = p.size(y, X.dom(n)), to = p.size(y, X.cod(n));
            bool ok = static_cast<int>(row.size()) == from;
            for (int v : row) ok = ok && v >= 0 && v < to;
            if (!ok) out.push_back(violation("NotTotal", {X.morphism_name(n), Y.object_name(y)}, "left action"));
        }
    }
    if (!out.empty()) return out;

    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x)
            for (int u = 0; u < p.size(y, x); ++u) {
                if (p.pull(Y.identity(y), x, u) != u)
                    out.push_back(violation("BreaksIdentity", {Y.object_name(y), X.object_name(x), p.name(y, x, u)}, "right action"));
                if (p.push(X.identity(x), y, u) != u)
                    out.push_back(violation("BreaksIdentity", {Y.object_name(y), X.object_name(x), p.name(y, x, u)}, "left action"));
            }
    // m1: y'' -> y', m2: y' -> y; (m1;m2)·u = m1·(m2·u)
    for (int m1 = 0; m1 < Y.num_morphisms(); ++m1)
        for (int m2 = 0; m2 < Y.num_morphisms(); ++m2) {
            if (Y.cod(m1) != Y.dom(m2)) continue;
            const int m12 = Y.compose(m1, m2);
            for (int x = 0; x < nx; ++x)
                for (int u = 0; u < p.size(Y.cod(m2), x); ++u)
                    if (p.pull(m12, x, u) != p.pull(m1, x, p.pull(m2, x, u)))
                        out.push_back(violation("BreaksComposition", {Y.morphism_name(m1), Y.morphism_name(m2), X.object_name(x)}, "right action"));
        }
    for (int n1 = 0; n1 < X.num_morphisms(); ++n1)
        for (int n2 = 0; n2 < X.num_morphisms(); ++n2) {
            if (X.cod(n1) != X.dom(n2)) continue;
            const int n12 = X.compose(n1, n2);
            for (int y = 0; y < ny; ++y)
                for (int u = 0; u < p.size(y, X.dom(n1)); ++u)
                    if (p.push(n12, y, u) != p.push(n2, y, p.push(n1, y, u)))
                        out.push_back(violation("BreaksComposition", {X.morphism_name(n1), X.morphism_name(n2), Y.object_name(y)}, "left action"));
        }
    for (int m = 0; m < Y.num_morphisms(); ++m)
        for (int n = 0; n < X.num_morphisms(); ++n)
            for (int u = 0; u < p.size(Y.cod(m), X.dom(n)); ++u)
                if (p.pull(m, X.cod(n), p.push(n, Y.cod(m), u)) != p.push(n, Y.dom(m), p.pull(m, X.dom(n), u)))
                    out.push_back(violation("ActionsDoNotCommute", {Y.morphism_name(m), X.morphism_name(n)}));
    return out;
}

Distributor validate_distributor(const DistributorDescription& raw, const CatPtr& src, const CatPtr& tgt)
{
    const auto& X = *src;
    const auto& Y = *tgt;
    const int nx = X.num_objects(), ny = Y.num_objects();
    Distributor p{src, tgt, std::vector<std::vector<std::string>>(nx * ny), {}, {}};
    std::vector<Violation> out;
    for (const auto& [key, elems] : raw.elements) {
        auto y = Y.find_object(key.first);
        auto x = X.find_object(key.second);
        if (!y || !x) {
            out.push_back(violation("DanglingReference", {key.first, key.second}, "unknown component"));
            continue;
        }
        std::set<std::string> seen;
        for (const auto& e : elems) {
            if (!seen.insert(e).second) out.push_back(violation("DuplicateName", {key.first, key.second, e}));
        }
        p.names[*y * nx + *x] = elems;
    }
    if (!out.empty()) throw ValidationError(std::move(out));

    auto elem_index = [&](ObjId y, ObjId x, const std::string& e) -> int {
        const auto& c = p.names[y * nx + x];
        auto it = std::find(c.begin(), c.end(), e);
        return it == c.end() ? -1 : static_cast<int>(it - c.begin());
    };

    p.pull_table.assign(Y.num_morphisms() * nx, {});
    for (int m = 0; m < Y.num_morphisms(); ++m)
        for (int x = 0; x < nx; ++x) p.pull_table[m * nx + x].assign(p.size(Y.cod(m), x), -1);
    p.push_table.assign(X.num_morphisms() * ny, {});
    for (int n = 0; n < X.num_morphisms(); ++n)
        for (int y = 0; y < ny; ++y) p.push_table[n * ny + y].assign(p.size(y, X.dom(n)), -1);

    for (const auto& [key, target] : raw.right_action) {
        const auto& [mn, yn, xn, en] = key;
        auto m = Y.find_morphism(mn);
        auto y = Y.find_object(yn);
        auto x = X.find_object(xn);
        if (!m || !y || !x || Y.cod(*m) != *y) {
            out.push_back(violation("DanglingReference", {mn, yn, xn, en}, "bad right-action key"));
            continue;
        }
        const int u = elem_index(*y, *x, en);
        const int v = elem_index(Y.dom(*m), *x, target);
        if (u < 0 || v < 0) {
            out.push_back(violation("DanglingReference", {mn, yn, xn, en, target}, "unknown element"));
            continue;
        }
        p.pull_table[*m * nx + *x][u] = v;
    }
    for (const auto& [key, target] : raw.left_action) {
        const auto& [nn, yn, xn, en] = key;
        auto n = X.find_morphism(nn);
        auto y = Y.find_object(yn);
        auto x = X.find_object(xn);
        if (!n || !y || !x || X.dom(*n) != *x) {
            out.push_back(violation("DanglingReference", {nn, yn, xn, en}, "bad left-action key"));
            continue;
        }
        const int u = elem_index(*y, *x, en);
        const int v = elem_index(*y, X.cod(*n), target);
        if (u < 0 || v < 0) {
            out.push_back(violation("DanglingReference", {nn, yn, xn, en, target}, "unknown element"));
            continue;
        }
        p.push_table[*n * ny + *y][u] = v;
    }
    if (!out.empty()) throw ValidationError(std::move(out));
    // Identities may be omitted from files.
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            auto& pr = p.pull_table[Y.identity(y) * nx + x];
            for (std::size_t u = 0; u < pr.size(); ++u)
                if (pr[u] < 0) pr[u] = static_cast<int>(u);
            auto& ps = p.push_table[X.identity(x) * ny + y];
            for (std::size_t u = 0; u < ps.size(); ++u)
                if (ps[u] < 0) ps[u] = static_cast<int>(u);
        }
    out = check_distributor(p);
    if (!out.empty()) throw ValidationError(std::move(out));
    return p;
}

DistributorDescription describe(const Distributor& p)
{
    const auto& X = *p.src;
    const auto& Y = *p.tgt;
    DistributorDescription d;
    for (int y = 0; y < p.ny(); ++y)
        for (int x = 0; x < p.nx(); ++x) d.elements[{Y.object_name(y), X.object_name(x)}] = p.names[y * p.nx() + x];
    for (int m = 0; m < Y.num_morphisms(); ++m)
        for (int x = 0; x < p.nx(); ++x)
            for (int u = 0; u < p.size(Y.cod(m), x); ++u)
                d.right_action[{Y.morphism_name(m), Y.object_name(Y.cod(m)), X.object_name(x), p.name(Y.cod(m), x, u)}]
                    = p.name(Y.dom(m), x, p.pull(m, x, u));
    for (int n = 0; n < X.num_morphisms(); ++n)
        for (int y = 0; y < p.ny(); ++y)
            for (int u = 0; u < p.size(y, X.dom(n)); ++u)
                d.left_action[{X.morphism_name(n), Y.object_name(y), X.object_name(X.dom(n)), p.name(y, X.dom(n), u)}]
                    = p.name(y, X.cod(n), p.push(n, y, u));
    return d;
}

namespace {

Distributor build_hom_distributor(const CatPtr& c)
{
    const auto& C = *c;
    const int n = C.num_objects();
    Distributor p{c, c, std::vector<std::vector<std::string>>(n * n), {}, {}};
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            for (MorId f : C.hom(y, x)) p.names[y * n + x].push_back(C.morphism_name(f));
    p.pull_table.assign(C.num_morphisms() * n, {});
    p.push_table.assign(C.num_morphisms() * n, {});
    for (int m = 0; m < C.num_morphisms(); ++m) {
        for (int x = 0; x < n; ++x) {
            for (MorId u : C.hom(C.cod(m), x)) p.pull_table[m * n + x].push_back(C.hom_index(C.compose(m, u)));
            for (MorId u : C.hom(x, C.dom(m))) p.push_table[m * n + x].push_back(C.hom_index(C.compose(u, m)));
        }
    }
    return p;
}

} // namespace

Distributor hom_distributor(const CatPtr& c)
{
    // Cached per category; the cache pins what it holds, so it is kept small.
    static std::mutex mu;
    static std::map<const FinCategory*, Distributor> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(c.get());
    if (it != cache.end() && it->second.src == c) return it->second;
    if (cache.size() >= 256) cache.clear();
    return cache.insert_or_assign(c.get(), build_hom_distributor(c)).first->second;
}

Distributor restrict_distributor(const Distributor& p, const Functor& f, const Functor& g)
{
    if (!same_category(f.cod, p.tgt) || !same_category(g.cod, p.src))
        throw ContractError("EndpointMismatch", "restriction functors do not land in the distributor's categories");
    const auto& Y2 = *f.dom;
    const auto& X2 = *g.dom;
    const int nx = X2.num_objects(), ny = Y2.num_objects();
    Distributor q{g.dom, f.dom, std::vector<std::vector<std::string>>(nx * ny), {}, {}};
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) q.names[y * nx + x] = p.names[f(y) * p.nx() + g(x)];
    q.pull_table.assign(Y2.num_morphisms() * nx, {});
    for (int m = 0; m < Y2.num_morphisms(); ++m)
        for (int x = 0; x < nx; ++x) q.pull_table[m * nx + x] = p.pull_table[f.map(m) * p.nx() + g(x)];
    q.push_table.assign(X2.num_morphisms() * ny, {});
    for (int n = 0; n < X2.num_morphisms(); ++n)
        for (int y = 0; y < ny; ++y) q.push_table[n * ny + y] = p.push_table[g.map(n) * p.ny() + f(y)];
    return q;
}

Distributor dual(const Distributor& p)
{
    Distributor q{opposite(p.tgt), opposite(p.src), std::vector<std::vector<std::string>>(p.names.size()), p.push_table,
                  p.pull_table};
    for (int y = 0; y < p.ny(); ++y)
        for (int x = 0; x < p.nx(); ++x) q.names[x * p.ny() + y] = p.names[y * p.nx() + x];
    return q;
}

Distributor terminal_distributor(const CatPtr& src, const CatPtr& tgt)
{
    const auto& X = *src;
    const auto& Y = *tgt;
    const int nx = X.num_objects(), ny = Y.num_objects();
    Distributor p{src, tgt, std::vector<std::vector<std::string>>(nx * ny, std::vector<std::string>{"*"}), {}, {}};
    p.pull_table.assign(Y.num_morphisms() * nx, std::vector<int>{0});
    p.push_table.assign(X.num_morphisms() * ny, std::vector<int>{0});
    return p;
}

std::vector<Distributor> enumerate_distributors(const CatPtr& src, const CatPtr& tgt, int cap)
{
    const auto& X = *src;
    const auto& Y = *tgt;
    const int nx = X.num_objects(), ny = Y.num_objects();
    const int ncomp = nx * ny;
    std::vector<Distributor> out;
    std::set<std::vector<int>> seen;

    std::vector<int> sizes(ncomp, 0);
    while (true) {
        // Variables: one per (non-identity action, element); identities are fixed.
        Search s("enumerate_distributors");
        std::vector<std::vector<int>> pull_var(Y.num_morphisms() * nx), push_var(X.num_morphisms() * ny);
        auto comp = [&](int y, int x) { return sizes[y * nx + x]; };
        auto range = [](int n) {
            std::vector<int> r(n);
            std::iota(r.begin(), r.end(), 0);
            return r;
        };
        for (int m = 0; m < Y.num_morphisms(); ++m) {
            if (Y.is_identity(m)) continue;
            for (int x = 0; x < nx; ++x)
                for (int u = 0; u < comp(Y.cod(m), x); ++u) pull_var[m * nx + x].push_back(s.add_variable(range(comp(Y.dom(m), x))));
        }
        for (int n = 0; n < X.num_morphisms(); ++n) {
            if (X.is_identity(n)) continue;
            for (int y = 0; y < ny; ++y)
                for (int u = 0; u < comp(y, X.dom(n)); ++u) push_var[n * ny + y].push_back(s.add_variable(range(comp(y, X.cod(n)))));
        }
        auto pull = [&, nx](Search::Assignment a, int m, int x, int u) {
            return Y.is_identity(m) ? u : a[pull_var[m * nx + x][u]];
        };
        auto push = [&, ny](Search::Assignment a, int n, int y, int u) {
            return X.is_identity(n) ? u : a[push_var[n * ny + y][u]];
        };
        auto scope_of = [](std::initializer_list<const std::vector<int>*> blocks) {
            std::vector<int> sc;
            for (auto* b : blocks) sc.insert(sc.end(), b->begin(), b->end());
            return sc;
        };
        for (int m1 = 0; m1 < Y.num_morphisms(); ++m1)
            for (int m2 = 0; m2 < Y.num_morphisms(); ++m2) {
                if (Y.cod(m1) != Y.dom(m2) || Y.is_identity(m1) || Y.is_identity(m2)) continue;
                const int m12 = Y.compose(m1, m2);
                for (int x = 0; x < nx; ++x) {
                    auto sc = scope_of({&pull_var[m1 * nx + x], &pull_var[m2 * nx + x], &pull_var[m12 * nx + x]});
                    if (sc.empty()) continue;
                    const int cnt = comp(Y.cod(m2), x);
                    s.add_constraint(sc, [=](Search::Assignment a) {
                        for (int u = 0; u < cnt; ++u)
                            if (pull(a, m12, x, u) != pull(a, m1, x, pull(a, m2, x, u))) return false;
                        return true;
                    });
                }
            }
        for (int n1 = 0; n1 < X.num_morphisms(); ++n1)
            for (int n2 = 0; n2 < X.num_morphisms(); ++n2) {
                if (X.cod(n1) != X.dom(n2) || X.is_identity(n1) || X.is_identity(n2)) continue;
                const int n12 = X.compose(n1, n2);
                for (int y = 0; y < ny; ++y) {
                    auto sc = scope_of({&push_var[n1 * ny + y], &push_var[n2 * ny + y], &push_var[n12 * ny + y]});
                    if (sc.empty()) continue;
                    const int cnt = comp(y, X.dom(n1));
                    s.add_constraint(sc, [=](Search::Assignment a) {
                        for (int u = 0; u < cnt; ++u)
                            if (push(a, n12, y, u) != push(a, n2, y, push(a, n1, y, u))) return false;
                        return true;
                    });
                }
            }
        for (int m = 0; m < Y.num_morphisms(); ++m)
            for (int n = 0; n < X.num_morphisms(); ++n) {
                if (Y.is_identity(m) || X.is_identity(n)) continue;
                const int y = Y.cod(m), y2 = Y.dom(m), x = X.dom(n), x2 = X.cod(n);
                auto sc = scope_of({&pull_var[m * nx + x2], &pull_var[m * nx + x], &push_var[n * ny + y], &push_var[n * ny + y2]});
                if (sc.empty()) continue;
                const int cnt = comp(y, x);
                s.add_constraint(sc, [=](Search::Assignment a) {
                    for (int u = 0; u < cnt; ++u)
                        if (pull(a, m, x2, push(a, n, y, u)) != push(a, n, y2, pull(a, m, x, u))) return false;
                    return true;
                });
            }

        s.for_each([&](Search::Assignment a) {
            Distributor p{src, tgt, std::vector<std::vector<std::string>>(ncomp), {}, {}};
            for (int c = 0; c < ncomp; ++c)
                for (int u = 0; u < sizes[c]; ++u) p.names[c].push_back(std::to_string(u));
            p.pull_table.assign(Y.num_morphisms() * nx, {});
            for (int m = 0; m < Y.num_morphisms(); ++m)
                for (int x = 0; x < nx; ++x)
                    for (int u = 0; u < comp(Y.cod(m), x); ++u) p.pull_table[m * nx + x].push_back(pull(a, m, x, u));
            p.push_table.assign(X.num_morphisms() * ny, {});
            for (int n = 0; n < X.num_morphisms(); ++n)
                for (int y = 0; y < ny; ++y)
                    for (int u = 0; u < comp(y, X.dom(n)); ++u) p.push_table[n * ny + y].push_back(push(a, n, y, u));

            // Canonical key: least serialization over relabelings inside components.
            std::vector<std::vector<int>> perms(ncomp);
            for (int c = 0; c < ncomp; ++c) perms[c] = range(sizes[c]);
            std::vector<int> best;
            bool have = false;
            std::function<void(int)> rec = [&](int c) {
                if (c == ncomp) {
                    std::vector<int> key;
                    // perms[c][old] = new label; tables rewritten under the relabeling
                    for (int m = 0; m < Y.num_morphisms(); ++m)
                        for (int x = 0; x < nx; ++x) {
                            const int from = Y.cod(m) * nx + x, to = Y.dom(m) * nx + x;
                            std::vector<int> row(sizes[from]);
                            for (int u = 0; u < sizes[from]; ++u) row[perms[from][u]] = perms[to][p.pull_table[m * nx + x][u]];
                            key.insert(key.end(), row.begin(), row.end());
                        }
                    for (int n = 0; n < X.num_morphisms(); ++n)
                        for (int y = 0; y < ny; ++y) {
                            const int from = y * nx + X.dom(n), to = y * nx + X.cod(n);
                            std::vector<int> row(sizes[from]);
                            for (int u = 0; u < sizes[from]; ++u) row[perms[from][u]] = perms[to][p.push_table[n * ny + y][u]];
                            key.insert(key.end(), row.begin(), row.end());
                        }
                    if (!have || key < best) {
                        best = std::move(key);
                        have = true;
                    }
                    return;
                }
                std::sort(perms[c].begin(), perms[c].end());
                do {
                    rec(c + 1);
                } while (std::next_permutation(perms[c].begin(), perms[c].end()));
            };
            rec(0);
            best.insert(best.begin(), sizes.begin(), sizes.end());
            if (seen.insert(best).second) out.push_back(std::move(p));
            return true;
        });

        int i = 0;
        while (i < ncomp && sizes[i] == cap) sizes[i++] = 0;
        if (i == ncomp) break;
        ++sizes[i];
    }
    return out;
}

// ---------------------------------------------------------------------------

TensorSet tensor_set(const Distributor& q, const Distributor& p, ObjId a, ObjId x)
{
    if (!same_category(q.src, p.tgt)) throw ContractError("ChainMismatch", "tensor factors do not share a category");
    const auto& Y = *p.tgt;
    TensorSet t;
    std::vector<int> offset(Y.num_objects() + 1, 0);
    for (int y = 0; y < Y.num_objects(); ++y) {
        offset[y] = static_cast<int>(t.members.size());
        for (int v = 0; v < q.size(a, y); ++v)
            for (int u = 0; u < p.size(y, x); ++u) t.members.push_back({y, v, u});
    }
    offset[Y.num_objects()] = static_cast<int>(t.members.size());
    auto index = [&](ObjId y, int v, int u) { return offset[y] + v * p.size(y, x) + u; };

    std::vector<int> parent(t.members.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (int m = 0; m < Y.num_morphisms(); ++m) {
        const ObjId y2 = Y.dom(m), y = Y.cod(m);
        for (int v = 0; v < q.size(a, y2); ++v)
            for (int u = 0; u < p.size(y, x); ++u)
                unite(parent, index(y, q.push(m, a, v), u), index(y2, v, p.pull(m, x, u)));
    }
    t.cls.resize(t.members.size());
    for (std::size_t i = 0; i < t.members.size(); ++i) {
        t.cls[i] = find_root(parent, static_cast<int>(i));
        if (t.cls[i] == static_cast<int>(i)) ++t.num_classes;
    }
    return t;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> chain_keys(const std::vector<Distributor>& chain, const CatPtr& base)
{
    std::vector<std::vector<int>> keys;
    if (chain.empty()) {
        for (int x = 0; x < base->num_objects(); ++x) keys.push_back({x});
        return keys;
    }
    const std::size_t n = chain.size();
    std::vector<int> xs(n + 1, 0);
    std::function<void(std::size_t)> objects = [&](std::size_t i) {
        const CatPtr& cat = i == 0 ? chain[0].tgt : chain[i - 1].src;
        if (i <= n) {
            for (int x = 0; x < cat->num_objects(); ++x) {
                xs[i] = x;
                objects(i + 1);
            }
            return;
        }
        std::vector<int> us(n, 0);
        std::function<void(std::size_t)> elems = [&](std::size_t k) {
            if (k == n) {
                std::vector<int> key(xs);
                key.insert(key.end(), us.begin(), us.end());
                keys.push_back(std::move(key));
                return;
            }
            for (int u = 0; u < chain[k].size(xs[k], xs[k + 1]); ++u) {
                us[k] = u;
                elems(k + 1);
            }
        };
        elems(0);
    };
    objects(0);
    return keys;
}

std::vector<GradedCell> enumerate_graded_cells(const std::vector<Distributor>& chain, const Distributor& q, int max_n)
{
    const int n = static_cast<int>(chain.size());
    if (n > max_n || n > 2) throw ContractError("ChainMismatch", "graded chains longer than the supported bound");
    for (int i = 0; i + 1 < n; ++i)
        if (!same_category(chain[i].src, chain[i + 1].tgt))
            throw ContractError("ChainMismatch", "consecutive distributors do not compose");
    if (n == 0) {
        if (!same_category(q.src, q.tgt)) throw ContractError("ChainMismatch", "empty chain needs an endo-distributor");
    } else if (!same_category(q.tgt, chain.front().tgt) || !same_category(q.src, chain.back().src)) {
        throw ContractError("ChainMismatch", "target does not span the chain");
    }

    const CatPtr base = q.tgt;
    const auto keys = chain_keys(chain, base);
    std::map<std::vector<int>, int> var;
    Search s("enumerate_graded_cells");
    for (const auto& k : keys) {
        const int x0 = k[0], xn = n == 0 ? k[0] : k[n];
        std::vector<int> dom(q.size(x0, xn));
        std::iota(dom.begin(), dom.end(), 0);
        var[k] = s.add_variable(std::move(dom));
    }
    // A_var == act(B_var)
    auto link = [&](int va, int vb, std::function<int(int)> act) {
        s.add_constraint({va, vb}, [va, vb, act = std::move(act)](Search::Assignment a) { return a[va] == act(a[vb]); });
    };

    if (n == 0) {
        const auto& X = *base;
        for (int m = 0; m < X.num_morphisms(); ++m) {
            if (X.is_identity(m)) continue;
            const int x2 = X.dom(m), x = X.cod(m);
            // pull(m, x, ε_x) == push(m, x2, ε_x2), both in q(x2, x)
            const int va = var.at({x}), vb = var.at({x2});
            s.add_constraint({va, vb}, [&q, m, x, x2, va, vb](Search::Assignment a) {
                return q.pull(m, x, a[va]) == q.push(m, x2, a[vb]);
            });
        }
    } else {
        const auto& X0 = *chain.front().tgt;
        const auto& Xn = *chain.back().src;
        for (const auto& k : keys) {
            const int vk = var.at(k);
            const int x0 = k[0], xn = k[n];
            for (int m = 0; m < X0.num_morphisms(); ++m) {
                if (X0.is_identity(m) || X0.cod(m) != x0) continue;
                auto k2 = k;
                k2[0] = X0.dom(m);
                k2[n + 1] = chain[0].pull(m, k[1], k[n + 1]);
                link(var.at(k2), vk, [&q, m, xn](int e) { return q.pull(m, xn, e); });
            }
            for (int m = 0; m < Xn.num_morphisms(); ++m) {
                if (Xn.is_identity(m) || Xn.dom(m) != xn) continue;
                auto k2 = k;
                k2[n] = Xn.cod(m);
                k2[2 * n] = chain[n - 1].push(m, k[n - 1], k[2 * n]);
                link(var.at(k2), vk, [&q, m, x0](int e) { return q.push(m, x0, e); });
            }
            if (n == 2) {
                const auto& X1 = *chain[0].src;
                const int x1 = k[1];
                for (int m = 0; m < X1.num_morphisms(); ++m) {
                    if (X1.is_identity(m) || X1.dom(m) != x1) continue;
                    // ε(u1·m, u2) == ε(u1, m·u2) for u2 ∈ p2(cod m, x2)
                    for (int u2 = 0; u2 < chain[1].size(X1.cod(m), k[2]); ++u2) {
                        std::vector<int> left{x0, X1.cod(m), k[2], chain[0].push(m, x0, k[3]), u2};
                        std::vector<int> right{x0, x1, k[2], k[3], chain[1].pull(m, k[2], u2)};
                        if (right != k) continue;
                        link(var.at(left), vk, [](int e) { return e; });
                    }
                }
            }
        }
    }

    std::vector<GradedCell> out;
    s.for_each([&](Search::Assignment a) {
        GradedCell c{chain, q, {}};
        for (const auto& k : keys) c.components[k] = a[var.at(k)];
        out.push_back(std::move(c));
        return true;
    });
    return out;
}

std::vector<GradedCell> enumerate_graded_cells(const std::vector<Distributor>& chain, const Functor& f0,
                                               const Functor& fn, const Distributor& q, int max_n)
{
    return enumerate_graded_cells(chain, restrict_distributor(q, f0, fn), max_n);
}

} // namespace relmon
