#include "relmon/corpus.hpp"

#include "relmon/io.hpp"

#include <filesystem>
#include <random>
#include <set>

namespace relmon {

namespace {

using Arrow = CategoryDescription::Arrow;

// Identities are "id_<object>" unless given; composites with identities are filled in.
CatPtr small_category(const std::vector<std::string>& objects, const std::vector<Arrow>& arrows,
                      const std::map<std::pair<std::string, std::string>, std::string>& composites,
                      const std::map<std::string, std::string>& ids = {})
{
    CategoryDescription d;
    d.objects = objects;
    std::map<std::string, std::pair<std::string, std::string>> ends;
    for (const auto& o : objects) {
        auto it = ids.find(o);
        const std::string id = it == ids.end() ? "id_" + o : it->second;
        d.identities[o] = id;
        d.morphisms.push_back({id, o, o});
        ends[id] = {o, o};
    }
    for (const auto& a : arrows) {
        d.morphisms.push_back(a);
        ends[a.name] = {a.dom, a.cod};
    }
    for (const auto& [f, fe] : ends)
        for (const auto& [g, ge] : ends) {
            if (fe.second != ge.first) continue;
            if (d.identities[fe.second] == g) d.composition[{f, g}] = f;
            else if (d.identities[ge.first] == f) d.composition[{f, g}] = g;
        }
    for (const auto& [k, v] : composites) d.composition[k] = v;
    return make_category(d);
}

Functor functor_by_names(const CatPtr& dom, const CatPtr& cod, const std::map<std::string, std::string>& objs,
                         const std::map<std::string, std::string>& mors)
{
    FunctorDescription d{objs, mors};
    return validate_functor(d, dom, cod);
}

Functor point(const CatPtr& cod, const std::string& object)
{
    return constant_functor(terminal_category(), cod, cod->object(object));
}

Functor empty_root(const CatPtr& cod) { return empty_functor(empty_category(), cod); }

CatPtr make_builtin(const std::string& name)
{
    if (name == "Empty") return empty_category();
    if (name == "Terminal") return terminal_category();
    if (name == "Interval") return small_category({"0", "1"}, {{"i", "0", "1"}}, {});
    if (name == "Disc2") return small_category({"0", "1"}, {}, {});
    if (name == "Indisc2")
        return small_category({"0", "1"}, {{"f", "0", "1"}, {"g", "1", "0"}}, {{{"f", "g"}, "id_0"}, {{"g", "f"}, "id_1"}});
    if (name == "BZ2") return delooping({{0, 1}, {1, 0}}, {"e", "s"});
    if (name == "BM3") return delooping({{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}, {"e", "a", "b"});
    if (name == "Idem") return delooping({{0, 1}, {1, 1}}, {"id", "e"});
    if (name == "ParallelPair") return small_category({"0", "1"}, {{"a", "0", "1"}, {"b", "0", "1"}}, {});
    if (name == "Split")
        return small_category({"A", "B"}, {{"e", "A", "A"}, {"p", "A", "B"}, {"s", "B", "A"}},
                              {{{"e", "e"}, "e"}, {{"e", "p"}, "p"}, {{"p", "s"}, "e"}, {{"s", "p"}, "id_B"}, {{"s", "e"}, "s"}});
    if (name == "Span") return small_category({"0", "1", "2"}, {{"f", "0", "1"}, {"g", "0", "2"}}, {});
    if (name == "Pushout")
        return small_category({"0", "1", "2", "3"},
                              {{"f", "0", "1"}, {"g", "0", "2"}, {"h", "1", "3"}, {"k", "2", "3"}, {"d", "0", "3"}},
                              {{{"f", "h"}, "d"}, {{"g", "k"}, "d"}});
    if (name == "NoReflect")
        return poset_category({"a", "b", "d", "c1", "c2"},
                              {{"a", "b"}, {"a", "d"}, {"b", "c1"}, {"b", "c2"}, {"d", "c1"}, {"d", "c2"}});
    throw ContractError("UnknownCategory", "no builtin category named " + name);
}

void add_category(Instance& inst, const std::string& role, const CatPtr& c) { inst.categories[role] = c; }

Instance root_instance(const std::string& name, const std::string& note, const CatPtr& E, const Functor& j)
{
    Instance inst;
    inst.name = name;
    inst.provenance = "builtin";
    inst.note = note;
    add_category(inst, "E", E);
    if (!same_category(j.dom, E)) add_category(inst, "A", j.dom);
    inst.functors["j"] = j;
    return inst;
}

void add_monads(Instance& inst, std::size_t limit)
{
    const Functor& j = inst.functors.at("j");
    const auto all = enumerate_relative_monads(j);
    for (std::size_t k = 0; k < all.size() && k < limit; ++k) {
        inst.functors["t" + std::to_string(k)] = all[k].t;
        inst.monads["T" + std::to_string(k)] = all[k];
    }
}

std::string role_of(const std::map<std::string, CatPtr>& cats, const CatPtr& c)
{
    for (const auto& [role, d] : cats)
        if (same_category(c, d)) return role;
    throw ContractError("DanglingReference", "category not registered in the instance");
}

std::string role_of(const std::map<std::string, Functor>& fs, const Functor& f)
{
    for (const auto& [role, g] : fs)
        if (f == g) return role;
    throw ContractError("DanglingReference", "functor not registered in the instance");
}

bool same_adjunction(const RelativeAdjunction& a, const RelativeAdjunction& b)
{
    return a.j == b.j && a.l == b.l && a.r == b.r && a.sharp == b.sharp;
}

template <class T, class Eq>
bool same_map(const std::map<std::string, T>& a, const std::map<std::string, T>& b, Eq eq)
{
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || !eq(ia->second, ib->second)) return false;
    return true;
}

void prefix(std::vector<Violation>& out, std::vector<Violation> vs, const std::string& role)
{
    for (auto& v : vs) {
        v.witness.insert(v.witness.begin(), role);
        out.push_back(std::move(v));
    }
}

} // namespace

bool operator==(const Instance& a, const Instance& b)
{
    return a.name == b.name && a.provenance == b.provenance && a.note == b.note &&
           same_map(a.categories, b.categories, [](const CatPtr& x, const CatPtr& y) { return same_category(x, y); }) &&
           same_map(a.functors, b.functors, [](const Functor& x, const Functor& y) { return x == y; }) &&
           same_map(a.distributors, b.distributors, [](const Distributor& x, const Distributor& y) { return x == y; }) &&
           same_map(a.monads, b.monads, [](const RelativeMonad& x, const RelativeMonad& y) { return x == y; }) &&
           same_map(a.adjunctions, b.adjunctions, same_adjunction);
}

std::vector<Violation> check_instance(const Instance& inst)
{
    std::vector<Violation> out;
    auto registered = [&](const CatPtr& c) {
        for (const auto& [role, d] : inst.categories)
            if (same_category(c, d)) return true;
        return false;
    };
    for (const auto& [role, c] : inst.categories) prefix(out, FinCategory::check(c->describe()), "category:" + role);
    for (const auto& [role, f] : inst.functors) {
        if (!registered(f.dom) || !registered(f.cod))
            out.push_back(Violation{"DanglingReference", {"functor:" + role}, "endpoint category not in the instance"});
        prefix(out, check_functor(f), "functor:" + role);
    }
    for (const auto& [role, p] : inst.distributors) {
        if (!registered(p.src) || !registered(p.tgt))
            out.push_back(Violation{"DanglingReference", {"distributor:" + role}, "endpoint category not in the instance"});
        prefix(out, check_distributor(p), "distributor:" + role);
    }
    for (const auto& [role, T] : inst.monads) prefix(out, check_relative_monad(T), "monad:" + role);
    for (const auto& [role, adj] : inst.adjunctions) prefix(out, check_relative_adjunction(adj), "adjunction:" + role);
    return out;
}

CatPtr builtin_category(const std::string& name)
{
    static std::map<std::string, CatPtr> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, make_builtin(name)).first;
    return it->second;
}

CatPtr delooping(const std::vector<std::vector<int>>& table, const std::vector<std::string>& names)
{
    const int n = static_cast<int>(table.size());
    if (n == 0) throw ContractError("NotAMonoid", "empty table has no unit");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ContractError("NotAMonoid", "table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ContractError("NotAMonoid", "entry out of range");
    }
    std::vector<std::string> nm = names;
    if (nm.empty())
        for (int i = 0; i < n; ++i) nm.push_back(i == 0 ? "e" : "m" + std::to_string(i));
    if (static_cast<int>(nm.size()) != n) throw ContractError("NotAMonoid", "one name per element is required");
    for (int x = 0; x < n; ++x)
        if (table[0][x] != x || table[x][0] != x)
            throw ContractError("NotAMonoid", "element 0 is not a unit: witness " + nm[x]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw ContractError("NotAMonoid", "not associative: witness (" + nm[a] + ", " + nm[b] + ", " + nm[c] + ")");
    CategoryDescription d;
    d.objects = {"*"};
    d.identities["*"] = nm[0];
    for (int x = 0; x < n; ++x) d.morphisms.push_back({nm[x], "*", "*"});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d.composition[{nm[a], nm[b]}] = nm[table[a][b]];
    return make_category(d);
}

CatPtr poset_category(const std::vector<std::string>& objects, const std::vector<std::pair<std::string, std::string>>& less)
{
    const int n = static_cast<int>(objects.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[objects[i]] = i;
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (const auto& [a, b] : less) {
        if (!idx.count(a) || !idx.count(b)) throw ContractError("DanglingReference", "unknown object in relation");
        le[idx[a]][idx[b]] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = true;
    auto name = [&](int i, int j) { return i == j ? "id_" + objects[i] : objects[i] + "<" + objects[j]; };
    CategoryDescription d;
    d.objects = objects;
    for (int i = 0; i < n; ++i) d.identities[objects[i]] = name(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (le[i][j]) d.morphisms.push_back({name(i, j), objects[i], objects[j]});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (le[i][j] && le[j][k]) d.composition[{name(i, j), name(j, k)}] = name(i, k);
    return make_category(d);
}

std::vector<Instance> builtin_corpus()
{
    std::vector<Instance> out;
    auto cat = [](const char* n) { return builtin_category(n); };

    out.push_back(root_instance("Empty", "identity root on the empty category", cat("Empty"), identity_functor(cat("Empty"))));
    out.push_back(root_instance("Terminal", "identity root on the terminal category", cat("Terminal"),
                                identity_functor(cat("Terminal"))));
    out.push_back(root_instance("Interval", "identity root on the arrow category", cat("Interval"),
                                identity_functor(cat("Interval"))));
    {
        Instance inst = root_instance("Disc2-empty-root", "empty root into a discrete category: not dense", cat("Disc2"),
                                      empty_root(cat("Disc2")));
        add_category(inst, "P", cat("Terminal"));
        inst.functors["r_point"] = point(cat("Disc2"), "0");
        inst.functors["r_swap"] = functor_by_names(cat("Disc2"), cat("Disc2"), {{"0", "1"}, {"1", "0"}},
                                                   {{"id_0", "id_1"}, {"id_1", "id_0"}});
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("Indisc2-empty-root", "empty root into an indiscrete category: dense", cat("Indisc2"),
                                      empty_root(cat("Indisc2")));
        add_category(inst, "P", cat("Terminal"));
        inst.functors["r_point"] = point(cat("Indisc2"), "0");
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("BZ2", "identity root on the delooping of Z/2", cat("BZ2"), identity_functor(cat("BZ2")));
        add_category(inst, "P", cat("Terminal"));
        inst.functors["r_point"] = point(cat("BZ2"), "*");
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("BZ2-empty-root", "empty root into BZ2: not dense", cat("BZ2"), empty_root(cat("BZ2")));
        add_category(inst, "P", cat("Terminal"));
        inst.functors["r_point"] = point(cat("BZ2"), "*");
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("PointBZ2", "the point into BZ2; finite analogue of right Z/2-actions", cat("BZ2"),
                                      point(cat("BZ2"), "*"));
        inst.functors["r"] = identity_functor(cat("BZ2"));
        add_monads(inst, 4);
        auto adj = find_left_relative_adjoint(inst.functors["j"], inst.functors["r"]);
        inst.functors["l"] = adj->l;
        inst.adjunctions["adj"] = *adj;
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("BM3", "the point into a three-element monoid (left zeros a, b and a unit)", cat("BM3"),
                                      point(cat("BM3"), "*"));
        inst.functors["r"] = identity_functor(cat("BM3"));
        out.push_back(std::move(inst));
    }
    {
        Instance inst = root_instance("Split", "a split idempotent; its splitting is an absolute colimit", cat("Split"),
                                      identity_functor(cat("Split")));
        inst.distributors["hom"] = hom_distributor(cat("Split"));
        out.push_back(std::move(inst));
    }
    out.push_back(root_instance("Span", "identity root on the span shape", cat("Span"), identity_functor(cat("Span"))));
    {
        const CatPtr P = cat("Pushout");
        const Functor incl = functor_by_names(cat("Span"), P, {{"0", "0"}, {"1", "1"}, {"2", "2"}},
                                              {{"id_0", "id_0"}, {"id_1", "id_1"}, {"id_2", "id_2"}, {"f", "f"}, {"g", "g"}});
        Instance inst = root_instance("Pushout", "the span included into the commuting square", P, incl);
        inst.functors["r"] = identity_functor(P);
        out.push_back(std::move(inst));
    }
    out.push_back(root_instance("ParallelPair", "identity root on two parallel arrows", cat("ParallelPair"),
                                identity_functor(cat("ParallelPair"))));
    out.push_back(root_instance("Idem", "identity root on the free idempotent", cat("Idem"), identity_functor(cat("Idem"))));
    {
        const CatPtr P = cat("NoReflect");
        Instance inst = root_instance("NoReflect", "a monad whose algebras form a non-reflective subposet", P, point(P, "a"));
        inst.functors["t"] = point(P, "b");
        MonadDescription d;
        d.unit["*"] = "a<b";
        d.ext[{"*", "*", "a<b"}] = "id_b";
        inst.monads["T"] = validate_relative_monad(inst.functors["j"], inst.functors["t"], d);
        out.push_back(std::move(inst));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<CatPtr> generate_category(std::uint64_t seed, const GenerationParams& params)
{
    const int n = params.objects;
    if (n < 0 || params.max_hom < 0) throw ContractError("BadParams", "negative generation parameters");
    std::mt19937_64 rng(seed);
    // Raw engine output keeps the stream identical across standard libraries.
    auto draw = [&](std::uint64_t k) { return k == 0 ? std::uint64_t{0} : rng() % k; };
    for (int attempt = 0; attempt < params.attempts; ++attempt) {
        CategoryDescription d;
        std::vector<std::vector<std::vector<std::string>>> hom(n, std::vector<std::vector<std::string>>(n));
        for (int x = 0; x < n; ++x) {
            d.objects.push_back("o" + std::to_string(x));
            const std::string id = "id" + std::to_string(x);
            d.identities[d.objects.back()] = id;
            d.morphisms.push_back({id, d.objects.back(), d.objects.back()});
            hom[x][x].push_back(id);
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const std::uint64_t extra = x == y ? draw(static_cast<std::uint64_t>(std::max(params.max_hom, 1)))
                                                   : draw(static_cast<std::uint64_t>(params.max_hom) + 1);
                for (std::uint64_t i = 0; i < extra; ++i) {
                    const std::string name = "m" + std::to_string(x) + std::to_string(y) + "_" + std::to_string(i);
                    d.morphisms.push_back({name, d.objects[x], d.objects[y]});
                    hom[x][y].push_back(name);
                }
            }
        bool possible = true;
        for (int x = 0; x < n && possible; ++x)
            for (int y = 0; y < n && possible; ++y)
                for (int z = 0; z < n && possible; ++z)
                    for (const auto& f : hom[x][y])
                        for (const auto& g : hom[y][z]) {
                            if (f == hom[x][x][0]) d.composition[{f, g}] = g;
                            else if (g == hom[y][y][0]) d.composition[{f, g}] = f;
                            else if (hom[x][z].empty()) possible = false;
                            else d.composition[{f, g}] = hom[x][z][draw(hom[x][z].size())];
                        }
        if (possible && FinCategory::check(d).empty()) return make_category(d);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Instance load_instance(const std::string& dir)
{
    namespace fs = std::filesystem;
    const fs::path base(dir);
    const io::Json manifest = io::read_json_file((base / "manifest.json").string());
    const std::string where = (base / "manifest.json").string();
    Instance inst;
    inst.name = io::get_string(manifest, "name", where);
    inst.provenance = manifest.contains("provenance") ? io::get_string(manifest, "provenance", where) : "file:" + dir;
    inst.note = manifest.contains("note") ? io::get_string(manifest, "note", where) : "";

    auto section = [&](const char* key) -> io::Json {
        if (!manifest.contains(key)) return io::Json::object();
        if (!manifest[key].is_object()) throw ParseError(where + "." + key, "expected an object");
        return manifest[key];
    };
    auto file_of = [&](const io::Json& entry, const std::string& at) {
        return entry.is_string() ? entry.get<std::string>() : io::get_string(entry, "file", at);
    };
    auto category = [&](const std::string& ref, const std::string& at) {
        auto it = inst.categories.find(ref);
        if (it == inst.categories.end()) throw ParseError(at, "unknown category reference '" + ref + "'");
        return it->second;
    };
    auto functor = [&](const std::string& ref, const std::string& at) {
        auto it = inst.functors.find(ref);
        if (it == inst.functors.end()) throw ParseError(at, "unknown functor reference '" + ref + "'");
        return it->second;
    };

    const auto cats = section("categories");
    for (auto it = cats.begin(); it != cats.end(); ++it) {
        const std::string file = file_of(it.value(), where + ".categories." + it.key());
        inst.categories[it.key()] = io::category_from_json(io::read_json_file((base / file).string()), file);
    }
    const auto funs = section("functors");
    for (auto it = funs.begin(); it != funs.end(); ++it) {
        const std::string at = where + ".functors." + it.key();
        const std::string file = file_of(it.value(), at);
        inst.functors[it.key()] = io::functor_from_json(io::read_json_file((base / file).string()),
                                                        category(io::get_string(it.value(), "dom", at), at + ".dom"),
                                                        category(io::get_string(it.value(), "cod", at), at + ".cod"), file);
    }
    const auto dists = section("distributors");
    for (auto it = dists.begin(); it != dists.end(); ++it) {
        const std::string file = file_of(it.value(), where + ".distributors." + it.key());
        const io::Json j = io::read_json_file((base / file).string());
        inst.distributors[it.key()] = io::distributor_from_json(j, category(io::get_string(j, "src", file), file + ".src"),
                                                                category(io::get_string(j, "tgt", file), file + ".tgt"), file);
    }
    const auto mons = section("monads");
    for (auto it = mons.begin(); it != mons.end(); ++it) {
        const std::string file = file_of(it.value(), where + ".monads." + it.key());
        const io::Json j = io::read_json_file((base / file).string());
        inst.monads[it.key()] = io::monad_from_json(j, functor(io::get_string(j, "j", file), file + ".j"),
                                                    functor(io::get_string(j, "t", file), file + ".t"), file);
    }
    const auto adjs = section("adjunctions");
    for (auto it = adjs.begin(); it != adjs.end(); ++it) {
        const std::string file = file_of(it.value(), where + ".adjunctions." + it.key());
        const io::Json j = io::read_json_file((base / file).string());
        inst.adjunctions[it.key()] = io::adjunction_from_json(j, functor(io::get_string(j, "j", file), file + ".j"),
                                                              functor(io::get_string(j, "l", file), file + ".l"),
                                                              functor(io::get_string(j, "r", file), file + ".r"), file);
    }
    return inst;
}

void save_instance(const Instance& inst, const std::string& dir)
{
    namespace fs = std::filesystem;
    const fs::path base(dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());

    io::Json manifest{{"schema", 1}, {"name", inst.name}, {"provenance", inst.provenance}, {"note", inst.note}};
    manifest["categories"] = io::Json::object();
    for (const auto& [role, c] : inst.categories) {
        const std::string file = "category." + role + ".json";
        io::write_json_file((base / file).string(), io::to_json(*c));
        manifest["categories"][role] = file;
    }
    manifest["functors"] = io::Json::object();
    for (const auto& [role, f] : inst.functors) {
        const std::string file = "functor." + role + ".json";
        io::write_json_file((base / file).string(), io::to_json(f));
        manifest["functors"][role] = {{"file", file}, {"dom", role_of(inst.categories, f.dom)}, {"cod", role_of(inst.categories, f.cod)}};
    }
    manifest["distributors"] = io::Json::object();
    for (const auto& [role, p] : inst.distributors) {
        const std::string file = "distributor." + role + ".json";
        io::write_json_file((base / file).string(), io::to_json(p, role_of(inst.categories, p.src), role_of(inst.categories, p.tgt)));
        manifest["distributors"][role] = file;
    }
    manifest["monads"] = io::Json::object();
    for (const auto& [role, T] : inst.monads) {
        const std::string file = "monad." + role + ".json";
        io::write_json_file((base / file).string(), io::to_json(T, role_of(inst.functors, T.j), role_of(inst.functors, T.t)));
        manifest["monads"][role] = file;
    }
    manifest["adjunctions"] = io::Json::object();
    for (const auto& [role, a] : inst.adjunctions) {
        const std::string file = "adjunction." + role + ".json";
        io::write_json_file((base / file).string(), io::to_json(a, role_of(inst.functors, a.j), role_of(inst.functors, a.l),
                                                                role_of(inst.functors, a.r)));
        manifest["adjunctions"][role] = file;
    }
    io::write_json_file((base / "manifest.json").string(), manifest);
}

} // namespace relmon
