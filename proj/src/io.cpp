#include "relmon/io.hpp"

#include <fstream>
#include <sstream>

namespace relmon::io {

namespace {

std::vector<std::string> split(const std::string& key, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<std::string> split_key(const std::string& key, char sep, std::size_t arity, const std::string& where)
{
    auto parts = split(key, sep);
    if (parts.size() != arity)
        throw ParseError(where + "[\"" + key + "\"]", "expected " + std::to_string(arity) + " fields separated by '" + sep + "'");
    for (const auto& p : parts)
        if (p.empty()) throw ParseError(where + "[\"" + key + "\"]", "empty field");
    return parts;
}

const Json& member(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object()) throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + "." + key, "missing field");
    return *it;
}

const Json& object_member(const Json& j, const std::string& key, const std::string& where)
{
    const Json& m = member(j, key, where);
    if (!m.is_object()) throw ParseError(where + "." + key, "expected an object");
    return m;
}

std::string as_string(const Json& j, const std::string& where)
{
    if (!j.is_string()) throw ParseError(where, "expected a string");
    return j.get<std::string>();
}

std::map<std::string, std::string> string_map(const Json& j, const std::string& where)
{
    if (!j.is_object()) throw ParseError(where, "expected an object");
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = as_string(it.value(), where + "[\"" + it.key() + "\"]");
    return out;
}

} // namespace

std::string get_string(const Json& j, const std::string& key, const std::string& where)
{
    return as_string(member(j, key, where), where + "." + key);
}

// ---------------------------------------------------------------------------

Json to_json(const FinCategory& c)
{
    const CategoryDescription d = c.describe();
    Json out;
    out["objects"] = d.objects;
    out["morphisms"] = Json::array();
    for (const auto& m : d.morphisms) out["morphisms"].push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
    out["identities"] = d.identities;
    Json comp = Json::object();
    for (const auto& [key, h] : d.composition) comp[key.first + ";" + key.second] = h;
    out["composition"] = comp;
    return out;
}

CategoryDescription category_description_from_json(const Json& j, const std::string& where)
{
    CategoryDescription d;
    const Json& objs = member(j, "objects", where);
    if (!objs.is_array()) throw ParseError(where + ".objects", "expected an array");
    for (std::size_t i = 0; i < objs.size(); ++i) d.objects.push_back(as_string(objs[i], where + ".objects[" + std::to_string(i) + "]"));
    const Json& mors = member(j, "morphisms", where);
    if (!mors.is_array()) throw ParseError(where + ".morphisms", "expected an array");
    for (std::size_t i = 0; i < mors.size(); ++i) {
        const std::string at = where + ".morphisms[" + std::to_string(i) + "]";
        d.morphisms.push_back({get_string(mors[i], "name", at), get_string(mors[i], "dom", at), get_string(mors[i], "cod", at)});
    }
    d.identities = string_map(member(j, "identities", where), where + ".identities");
    for (const auto& [key, h] : string_map(member(j, "composition", where), where + ".composition")) {
        auto parts = split_key(key, ';', 2, where + ".composition");
        d.composition[{parts[0], parts[1]}] = h;
    }
    return d;
}

CatPtr category_from_json(const Json& j, const std::string& where)
{
    return make_category(category_description_from_json(j, where));
}

Json to_json(const Functor& f)
{
    const FunctorDescription d = f.describe();
    return Json{{"on_objects", d.on_objects}, {"on_morphisms", d.on_morphisms}};
}

Functor functor_from_json(const Json& j, const CatPtr& dom, const CatPtr& cod, const std::string& where)
{
    FunctorDescription d;
    d.on_objects = string_map(member(j, "on_objects", where), where + ".on_objects");
    d.on_morphisms = string_map(member(j, "on_morphisms", where), where + ".on_morphisms");
    return validate_functor(d, dom, cod);
}

Json to_json(const Distributor& p, const std::string& src_ref, const std::string& tgt_ref)
{
    const DistributorDescription d = describe(p);
    Json out{{"src", src_ref}, {"tgt", tgt_ref}};
    Json elems = Json::object(), right = Json::object(), left = Json::object();
    for (const auto& [key, names] : d.elements) elems[key.first + "|" + key.second] = names;
    for (const auto& [key, v] : d.right_action)
        right[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key) + "|" + std::get<3>(key)] = v;
    for (const auto& [key, v] : d.left_action)
        left[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key) + "|" + std::get<3>(key)] = v;
    out["elements"] = elems;
    out["right_action"] = right;
    out["left_action"] = left;
    return out;
}

Distributor distributor_from_json(const Json& j, const CatPtr& src, const CatPtr& tgt, const std::string& where)
{
    DistributorDescription d;
    const Json& elems = object_member(j, "elements", where);
    for (auto it = elems.begin(); it != elems.end(); ++it) {
        const std::string at = where + ".elements[\"" + it.key() + "\"]";
        auto parts = split_key(it.key(), '|', 2, where + ".elements");
        if (!it.value().is_array()) throw ParseError(at, "expected an array");
        std::vector<std::string> names;
        for (const auto& e : it.value()) names.push_back(as_string(e, at));
        d.elements[{parts[0], parts[1]}] = names;
    }
    for (const char* side : {"right_action", "left_action"}) {
        const std::string at = where + "." + side;
        auto& target = std::string(side) == "right_action" ? d.right_action : d.left_action;
        for (const auto& [key, v] : string_map(member(j, side, where), at)) {
            auto parts = split_key(key, '|', 4, at);
            target[{parts[0], parts[1], parts[2], parts[3]}] = v;
        }
    }
    return validate_distributor(d, src, tgt);
}

Json to_json(const RelativeMonad& t, const std::string& j_ref, const std::string& t_ref)
{
    const MonadDescription d = describe(t);
    Json ext = Json::object();
    for (const auto& [key, g] : d.ext) ext[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key)] = g;
    return Json{{"j", j_ref}, {"t", t_ref}, {"unit", d.unit}, {"ext", ext}};
}

RelativeMonad monad_from_json(const Json& j, const Functor& root, const Functor& carrier, const std::string& where)
{
    MonadDescription d;
    d.unit = string_map(member(j, "unit", where), where + ".unit");
    for (const auto& [key, g] : string_map(member(j, "ext", where), where + ".ext")) {
        auto parts = split_key(key, '|', 3, where + ".ext");
        d.ext[{parts[0], parts[1], parts[2]}] = g;
    }
    return validate_relative_monad(root, carrier, d);
}

Json to_json(const RelativeAdjunction& a, const std::string& j_ref, const std::string& l_ref, const std::string& r_ref)
{
    const AdjunctionDescription d = describe(a);
    Json sharp = Json::object();
    for (const auto& [key, f] : d.sharp) sharp[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key)] = f;
    return Json{{"j", j_ref}, {"l", l_ref}, {"r", r_ref}, {"sharp", sharp}};
}

RelativeAdjunction adjunction_from_json(const Json& j, const Functor& root, const Functor& l, const Functor& r,
                                        const std::string& where)
{
    AdjunctionDescription d;
    for (const auto& [key, f] : string_map(member(j, "sharp", where), where + ".sharp")) {
        auto parts = split_key(key, '|', 3, where + ".sharp");
        d.sharp[{parts[0], parts[1], parts[2]}] = f;
    }
    return validate_relative_adjunction(root, l, r, d);
}

Json to_json(const AlgebraCategory& algcat)
{
    Json out = to_json(*algcat.cat);
    out["u_T"] = to_json(algcat.u);
    out["f_T"] = to_json(algcat.f);
    const auto& A = *algcat.T.j.dom;
    const auto& E = *algcat.T.j.cod;
    const auto& M = *algcat.cat;
    Json alpha = Json::object();
    for (int a = 0; a < A.num_objects(); ++a)
        for (int m = 0; m < M.num_objects(); ++m)
            for (MorId f : E.hom(algcat.T.j(a), algcat.u(m)))
                alpha[A.object_name(a) + "|" + M.object_name(m) + "|" + E.morphism_name(f)] =
                    E.morphism_name(algcat.generic.act(a, m, f));
    out["alpha_T"] = alpha;
    return out;
}

// ---------------------------------------------------------------------------

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw ParseError(path + "@" + std::to_string(e.byte), e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << dump(j);
    if (!out) throw IoError("write failed for " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace relmon::io
