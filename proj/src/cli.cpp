#include "relmon/cli.hpp"

#include "relmon/io.hpp"
#include "relmon/monadicity.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <ostream>

namespace relmon {

std::string to_string(ExitStatus s)
{
    switch (s) {
    case ExitStatus::Pass: return "pass";
    case ExitStatus::Negative: return "fail";
    case ExitStatus::Inconclusive: return "inconclusive";
    case ExitStatus::InputError: return "input-error";
    case ExitStatus::Budget: return "budget-exceeded";
    }
    return "?";
}

namespace {

namespace fs = std::filesystem;
using io::Json;

// ---------------------------------------------------------------------------
// Input documents
//
// Every document is a JSON object with a "kind". References to other
// documents are either inline objects or paths relative to the referring
// file; categories may also be named "builtin:<Name>".

struct Loaded {
    Json doc;
    fs::path dir;
    std::string where;
};

Loaded load(const std::string& path)
{
    return {io::read_json_file(path), fs::path(path).parent_path(), path};
}

std::string kind_of(const Json& j, const std::string& where)
{
    if (!j.is_object()) throw ParseError(where, "expected an object");
    if (j.contains("kind")) return io::get_string(j, "kind", where);
    if (j.contains("objects")) return "category";
    throw ParseError(where + ".kind", "missing field");
}

void expect_kind(const Json& j, const std::string& kind, const std::string& where)
{
    const std::string k = kind_of(j, where);
    if (k != kind) throw ParseError(where + ".kind", "expected '" + kind + "', found '" + k + "'");
}

CatPtr category_ref(const Json& ref, const fs::path& dir, const std::string& where);
Functor functor_ref(const Json& ref, const fs::path& dir, const std::string& where);

CatPtr category_doc(const Json& j, const std::string& where)
{
    expect_kind(j, "category", where);
    return io::category_from_json(j, where);
}

CatPtr category_ref(const Json& ref, const fs::path& dir, const std::string& where)
{
    if (ref.is_object()) return category_doc(ref, where);
    if (!ref.is_string()) throw ParseError(where, "expected a category object or reference");
    const std::string s = ref.get<std::string>();
    if (s.rfind("builtin:", 0) == 0) {
        try {
            return builtin_category(s.substr(8));
        } catch (const ContractError& e) {
            throw ParseError(where, e.what());
        }
    }
    const fs::path p = dir / s;
    return category_doc(io::read_json_file(p.string()), p.string());
}

Functor functor_doc(const Json& j, const fs::path& dir, const std::string& where)
{
    expect_kind(j, "functor", where);
    if (j.contains("identity")) return identity_functor(category_ref(j["identity"], dir, where + ".identity"));
    if (j.contains("empty_into")) return empty_functor(empty_category(), category_ref(j["empty_into"], dir, where + ".empty_into"));
    if (!j.contains("dom")) throw ParseError(where + ".dom", "missing field");
    if (!j.contains("cod")) throw ParseError(where + ".cod", "missing field");
    const CatPtr dom = category_ref(j["dom"], dir, where + ".dom");
    const CatPtr cod = category_ref(j["cod"], dir, where + ".cod");
    return io::functor_from_json(j, dom, cod, where);
}

Functor functor_ref(const Json& ref, const fs::path& dir, const std::string& where)
{
    if (ref.is_object()) return functor_doc(ref, dir, where);
    if (!ref.is_string()) throw ParseError(where, "expected a functor object or path");
    const fs::path p = dir / ref.get<std::string>();
    return functor_doc(io::read_json_file(p.string()), p.parent_path(), p.string());
}

Functor load_functor(const std::string& path)
{
    const Loaded l = load(path);
    return functor_doc(l.doc, l.dir, l.where);
}

RelativeMonad monad_doc(const Loaded& l)
{
    expect_kind(l.doc, "monad", l.where);
    for (const char* k : {"j", "t"})
        if (!l.doc.contains(k)) throw ParseError(l.where + "." + k, "missing field");
    const Functor j = functor_ref(l.doc["j"], l.dir, l.where + ".j");
    const Functor t = functor_ref(l.doc["t"], l.dir, l.where + ".t");
    return io::monad_from_json(l.doc, j, t, l.where);
}

RelativeAdjunction adjunction_doc(const Loaded& l)
{
    expect_kind(l.doc, "adjunction", l.where);
    for (const char* k : {"j", "l", "r"})
        if (!l.doc.contains(k)) throw ParseError(l.where + "." + k, "missing field");
    return io::adjunction_from_json(l.doc, functor_ref(l.doc["j"], l.dir, l.where + ".j"),
                                    functor_ref(l.doc["l"], l.dir, l.where + ".l"),
                                    functor_ref(l.doc["r"], l.dir, l.where + ".r"), l.where);
}

// ---------------------------------------------------------------------------
// Reports

Json violation_json(const Violation& v)
{
    return Json{{"kind", v.kind}, {"witness", v.witness}, {"message", v.message}};
}

struct Report {
    std::string command;
    ExitStatus status = ExitStatus::Pass;
    std::string verdict;
    std::string mode;
    Json witnesses = Json::array();
    Json census = Json::object();
    Json durations = Json::object();
    Json details = Json::object();
    std::optional<Json> error;

    void witness(const Violation& v) { witnesses.push_back(violation_json(v)); }
    void witnesses_from(const std::vector<Violation>& vs)
    {
        for (const auto& v : vs) witness(v);
    }

    Json json() const
    {
        Json out{{"schema", 1},
                 {"command", command},
                 {"status", to_string(status)},
                 {"exit_code", static_cast<int>(status)},
                 {"verdict", verdict},
                 {"witnesses", witnesses},
                 {"census", census},
                 {"durations", durations},
                 {"details", details}};
        if (!mode.empty()) out["mode"] = mode;
        if (error) out["error"] = *error;
        return out;
    }
};

void print_witnesses(std::ostream& out, const Json& ws, std::size_t limit = 10)
{
    std::size_t shown = 0;
    for (const auto& w : ws) {
        if (shown++ == limit) {
            out << "  ... " << (ws.size() - limit) << " more\n";
            break;
        }
        out << "  " << w["kind"].get<std::string>();
        std::string sep = "(";
        for (const auto& s : w["witness"]) {
            out << sep << s.get<std::string>();
            sep = ", ";
        }
        if (sep == ", ") out << ")";
        if (!w["message"].get<std::string>().empty()) out << ": " << w["message"].get<std::string>();
        out << "\n";
    }
}

MonadicityMode pick_mode(bool strict, bool nonstrict)
{
    if (strict && nonstrict) throw ParseError("--strict/--nonstrict", "the modes are exclusive");
    return nonstrict ? MonadicityMode::NonStrict : MonadicityMode::Strict;
}

Json object_names(const FinCategory& c)
{
    Json out = Json::array();
    for (int x = 0; x < c.num_objects(); ++x) out.push_back(c.object_name(x));
    return out;
}

Json classification_json(const FunctorClassification& c)
{
    Json out{{"faithful", c.faithful},
             {"full", c.full},
             {"essentially_surjective", c.essentially_surjective},
             {"bijective_on_objects", c.bijective_on_objects},
             {"conservative", c.conservative},
             {"is_iso", c.is_iso},
             {"is_equivalence", c.is_equivalence}};
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_validate(Report& rep, std::ostream& out, const std::string& path)
{
    std::vector<Violation> vs;
    std::string what;
    if (fs::is_directory(path)) {
        const Instance inst = load_instance(path);
        what = "instance " + inst.name;
        vs = check_instance(inst);
    } else {
        // Validation errors of the top-level document are verdicts, not input errors.
        const Loaded l = load(path);
        const std::string kind = kind_of(l.doc, l.where);
        what = kind;
        try {
            if (kind == "category") vs = FinCategory::check(io::category_description_from_json(l.doc, l.where));
            else if (kind == "functor") functor_doc(l.doc, l.dir, l.where);
            else if (kind == "monad") monad_doc(l);
            else if (kind == "adjunction") adjunction_doc(l);
            else throw ParseError(l.where + ".kind", "unknown kind '" + kind + "'");
        } catch (const ValidationError& e) {
            vs = e.violations();
        }
    }
    rep.details["object"] = what;
    rep.witnesses_from(vs);
    rep.verdict = vs.empty() ? "valid" : "invalid";
    rep.status = vs.empty() ? ExitStatus::Pass : ExitStatus::Negative;
    out << what << ": " << rep.verdict << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_density(Report& rep, std::ostream& out, const std::string& jpath)
{
    const Functor j = load_functor(jpath);
    const DensityResult d = is_dense(j);
    rep.verdict = d.dense ? "dense" : "not dense";
    rep.status = d.dense ? ExitStatus::Pass : ExitStatus::Negative;
    if (d.witness) {
        const auto& E = *j.cod;
        const auto [e, e2] = *d.witness;
        const std::size_t nerve = nerve_hom_count(j, e, e2);
        rep.witness(Violation{"NotDense", {E.object_name(e), E.object_name(e2)},
                              std::to_string(E.hom(e, e2).size()) + " morphisms but " + std::to_string(nerve) +
                                  " nerve morphisms"});
    }
    out << "density: " << rep.verdict << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_adjoint(Report& rep, std::ostream& out, const std::string& jpath, const std::string& rpath)
{
    const Functor j = load_functor(jpath);
    const Functor r = load_functor(rpath);
    const auto adj = find_left_relative_adjoint(j, r);
    if (!adj) {
        rep.verdict = "no left adjoint";
        rep.status = ExitStatus::Negative;
        rep.witness(Violation{"NoAdjoint", {}, "no left j-adjoint exists"});
    } else {
        rep.verdict = "left adjoint";
        Json l = io::to_json(adj->l);
        l["kind"] = "functor";
        rep.details["l"] = l;
        rep.details["adjunction"] = io::to_json(*adj, "j", "l", "r");
    }
    out << "adjoint: " << rep.verdict << "\n";
    if (adj)
        for (const auto& [a, e] : adj->l.describe().on_objects) out << "  l(" << a << ") = " << e << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_monad_validate(Report& rep, std::ostream& out, const std::string& path)
{
    std::vector<Violation> vs;
    try {
        monad_doc(load(path));
    } catch (const ValidationError& e) {
        vs = e.violations();
    }
    rep.witnesses_from(vs);
    rep.verdict = vs.empty() ? "valid" : "invalid";
    rep.status = vs.empty() ? ExitStatus::Pass : ExitStatus::Negative;
    out << "monad: " << rep.verdict << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_monad_enumerate(Report& rep, std::ostream& out, const std::string& jpath, const std::string& tpath)
{
    const Functor j = load_functor(jpath);
    const auto monads = tpath.empty() ? enumerate_relative_monads(j) : enumerate_relative_monads(j, load_functor(tpath));
    Json list = Json::array();
    for (const auto& T : monads) {
        Json m = io::to_json(T, "j", "t");
        m["carrier"] = T.t.describe().on_objects;
        m["algebras"] = build_algebra_category(T).objects.size();
        list.push_back(m);
    }
    rep.details["monads"] = list;
    rep.census["monads"] = monads.size();
    rep.verdict = std::to_string(monads.size()) + " monads";
    out << "monads: " << monads.size() << "\n";
    for (std::size_t k = 0; k < monads.size(); ++k)
        out << "  #" << k << ": " << list[k]["algebras"].get<std::size_t>() << " algebras with terminal domain\n";
}

void cmd_algebras(Report& rep, std::ostream& out, const std::string& path)
{
    const RelativeMonad T = monad_doc(load(path));
    const AlgebraCategory algcat = build_algebra_category(T);
    rep.details["algebra_category"] = io::to_json(algcat);
    rep.census["objects"] = algcat.cat->num_objects();
    rep.census["morphisms"] = algcat.cat->num_morphisms();
    rep.verdict = std::to_string(algcat.objects.size()) + " algebras";
    out << "Alg(T): " << algcat.cat->num_objects() << " objects, " << algcat.cat->num_morphisms() << " morphisms\n";
    for (int m = 0; m < algcat.cat->num_objects(); ++m) out << "  " << algcat.cat->object_name(m) << "\n";
}

struct MonadicArgs {
    std::string j, r;
    bool strict = false, nonstrict = false, co = false, audit = false;
    int shapes = 6, cap = 2;
};

void cmd_monadic(Report& rep, std::ostream& out, const MonadicArgs& a)
{
    const Functor j = load_functor(a.j);
    const Functor r = load_functor(a.r);
    const MonadicityMode mode = pick_mode(a.strict, a.nonstrict);
    rep.mode = to_string(mode);
    const MonadicityReport m = decide_monadicity(j, r, mode, a.co);
    rep.verdict = to_string(m.verdict);
    rep.witnesses_from(m.witnesses);
    rep.status = m.monadic() ? ExitStatus::Pass : ExitStatus::Negative;
    rep.details["co"] = a.co;
    if (m.verdict != Verdict::NoAdjoint) rep.details["comparison"] = classification_json(m.classification);
    if (m.algebras) {
        rep.census["algebras"] = m.algebras->objects.size();
        rep.details["algebras"] = object_names(*m.algebras->cat);
    }
    out << (a.co ? "comonadic" : "monadic") << " (" << rep.mode << "): " << rep.verdict << "\n";
    if (m.verdict == Verdict::NotMonadic) out << "  comparison not " << (mode == MonadicityMode::Strict ? "iso" : "an equivalence") << "\n";
    print_witnesses(out, rep.witnesses);

    if (!a.audit) return;
    if (a.co) throw ParseError("--audit", "audits run on the original orientation only");
    const AuditReport au = creation_audit(j, r, shape_family(a.shapes, a.cap), mode);
    for (const auto& [k, v] : au.census) rep.census[k] = v;
    Json items = Json::array();
    for (const auto& it : au.items) {
        Json item{{"kind", it.kind}, {"label", it.label}, {"passed", it.passed}, {"absolute", it.absolute}, {"note", it.note}};
        item["violations"] = Json::array();
        for (const auto& v : it.violations) item["violations"].push_back(violation_json(v));
        items.push_back(item);
    }
    rep.details["audit"] = Json{{"dense", au.dense},
                                {"vacuous", au.vacuous},
                                {"reason", au.reason},
                                {"passed", au.passed},
                                {"failed", au.failed},
                                {"extension_ok", au.extension_ok},
                                {"retraction_ok", au.retraction_ok},
                                {"witness_found", au.witness_found},
                                {"inconclusive", au.inconclusive},
                                {"items", items}};
    for (const auto& d : au.discrepancies) rep.witness(d);
    out << "audit: " << au.passed << " passed, " << au.failed << " failed";
    if (!au.reason.empty()) out << " (" << au.reason << ")";
    out << "\n";
    if (!au.discrepancies.empty()) {
        rep.status = ExitStatus::Negative;
        out << "  discrepancies: " << au.discrepancies.size() << "\n";
    } else if (au.inconclusive) {
        rep.status = ExitStatus::Inconclusive;
        out << "  no failing creation witness within the bound\n";
    }
}

void cmd_paste(Report& rep, std::ostream& out, const std::string& inner, const std::string& outer,
               const std::string& direction, const std::string& rpath)
{
    PasteDirection dir;
    if (direction == "paste") dir = PasteDirection::Paste;
    else if (direction == "unpaste") dir = PasteDirection::Unpaste;
    else throw ParseError("--direction", "expected paste or unpaste");
    const RelativeAdjunction given = adjunction_doc(load(inner));
    const RelativeAdjunction outer_adj = adjunction_doc(load(outer));
    Functor r = given.r;
    if (dir == PasteDirection::Unpaste) {
        if (rpath.empty()) throw ParseError("--r", "unpaste needs the factor r");
        r = load_functor(rpath);
    }
    PastingReport p;
    try {
        p = paste_adjunction(given, outer_adj, r, dir);
    } catch (const ContractError& e) {
        if (e.kind() != "ValidationFail") throw;
        rep.verdict = "theorem violation";
        rep.status = ExitStatus::Negative;
        rep.witness(Violation{"ValidationFail", {}, e.what()});
        out << "paste: " << rep.verdict << "\n";
        print_witnesses(out, rep.witnesses);
        return;
    }
    rep.witnesses_from(p.violations);
    const bool ok = p.inner_valid && p.composite_valid;
    rep.verdict = ok ? "both valid" : "both invalid";
    rep.status = ok ? ExitStatus::Pass : ExitStatus::Negative;
    if (ok) {
        rep.details["inner"] = io::to_json(p.inner, "l'", "l", "r");
        rep.details["composite"] = io::to_json(p.composite, "j", "l", "r;r'");
    }
    if (p.right_morphism) {
        rep.details["right_morphism"] = Json{{"commutes", p.right_morphism->commutes},
                                             {"adjunction", p.right_morphism->adjunction},
                                             {"extension", p.right_morphism->extension},
                                             {"equivalent", p.right_morphism->equivalent}};
    }
    out << direction << ": " << rep.verdict << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_composite(Report& rep, std::ostream& out, const std::string& jpath, const std::string& rppath,
                   const std::string& rpath, MonadicityMode mode)
{
    const Functor j = load_functor(jpath);
    const Functor rprime = load_functor(rppath);
    const Functor r = load_functor(rpath);
    rep.mode = to_string(mode);
    try {
        const CompositeReport c = decide_composite_monadicity(j, rprime, r, mode);
        rep.verdict = c.left.monadic() ? "both monadic" : "neither monadic";
        rep.details["left"] = to_string(c.left.verdict);
        rep.details["right"] = to_string(c.right.verdict);
        out << "r against l': " << to_string(c.left.verdict) << "\n"
            << "r;r' against j: " << to_string(c.right.verdict) << "\n";
        rep.status = c.left.monadic() ? ExitStatus::Pass : ExitStatus::Negative;
    } catch (const ContractError& e) {
        if (e.kind() != "PremiseFail" && e.kind() != "TheoremViolation") throw;
        rep.verdict = e.kind();
        rep.status = ExitStatus::Negative;
        rep.witness(Violation{e.kind(), {}, e.what()});
        out << "composite: " << e.kind() << ": " << e.what() << "\n";
    }
}

std::vector<Instance> corpus_from(const std::string& dir)
{
    if (dir.empty()) return builtin_corpus();
    fs::path root(dir);
    if (fs::exists(root / "manifest.json")) return {load_instance(root.string())};
    if (fs::is_directory(root / "instances")) root /= "instances";
    if (!fs::is_directory(root)) throw IoError("not a directory: " + dir);
    std::vector<fs::path> bundles;
    for (const auto& entry : fs::directory_iterator(root))
        if (fs::exists(entry.path() / "manifest.json")) bundles.push_back(entry.path());
    std::sort(bundles.begin(), bundles.end());
    std::vector<Instance> out;
    for (const auto& b : bundles) out.push_back(load_instance(b.string()));
    if (out.empty()) throw IoError("no instance bundles under " + dir);
    return out;
}

void cmd_suite(Report& rep, std::ostream& out, const std::string& corpus, int shapes, int cap)
{
    const auto instances = corpus_from(corpus);
    SuiteBounds bounds;
    bounds.family = shape_family(shapes, cap);
    const SuiteReport s = run_theorem_suite(instances, bounds);
    rep.census["instances"] = instances.size();
    for (const auto& [k, v] : s.census) rep.census[k] = v;
    Json rows = Json::array();
    for (const auto& row : s.rows) {
        rows.push_back(Json{{"theorem", row.theorem},
                            {"checked", row.checked},
                            {"passed", row.passed},
                            {"failed", row.failed},
                            {"skipped", row.skipped},
                            {"failures", row.failures},
                            {"notes", row.notes}});
        for (const auto& f : row.failures) rep.witness(Violation{"TheoremFail", {row.theorem}, f});
    }
    rep.details["rows"] = rows;
    rep.details["invalid_instances"] = s.invalid_instances;
    rep.verdict = s.passed ? "all theorems hold" : "failures";
    rep.status = s.passed ? ExitStatus::Pass : ExitStatus::Negative;
    out << "suite over " << instances.size() << " instances\n";
    for (const auto& row : s.rows)
        out << "  " << (row.failed == 0 ? "ok  " : "FAIL") << " " << row.theorem << ": " << row.passed << "/" << row.checked
            << (row.skipped ? " (" + std::to_string(row.skipped) + " skipped)" : std::string()) << "\n";
    for (const auto& name : s.invalid_instances) out << "  invalid instance: " << name << "\n";
    print_witnesses(out, rep.witnesses);
}

void cmd_generate(Report& rep, std::ostream& out, std::uint64_t seed, int objects, int max_hom, const std::string& target)
{
    const auto c = generate_category(seed, GenerationParams{objects, max_hom, 1000});
    rep.details["seed"] = seed;
    if (!c) {
        rep.verdict = "exhausted";
        rep.status = ExitStatus::Inconclusive;
        out << "no associative table found within the attempt bound\n";
        return;
    }
    Json doc = io::to_json(**c);
    doc["kind"] = "category";
    rep.details["category"] = doc;
    rep.verdict = "generated";
    rep.census["objects"] = (*c)->num_objects();
    rep.census["morphisms"] = (*c)->num_morphisms();
    if (!target.empty()) io::write_json_file(target, doc);
    else out << io::dump(doc);
}

void cmd_export(Report& rep, std::ostream& out, const std::string& dir)
{
    std::size_t n = 0;
    for (const auto& inst : builtin_corpus()) {
        save_instance(inst, (fs::path(dir) / inst.name).string());
        ++n;
    }
    rep.census["instances"] = n;
    rep.verdict = "exported";
    out << "wrote " << n << " instance bundles to " << dir << "\n";
}

std::string find_report_path(const std::vector<std::string>& args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--report" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--report=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

} // namespace

ExitStatus run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Report rep;
    std::string report_path;
    bool timings = false;

    CLI::App app{"relmon: relative monads and monadicity on finite categories", "relmon"};
    app.require_subcommand(1);
    app.add_option("--report", report_path, "write the JSON report to this file");
    app.add_flag("--timings", timings, "record wall-clock durations in the report");

    std::string path, jpath, rpath, tpath, rppath, inner, outer, direction = "paste", corpus, target;
    MonadicArgs margs;
    bool strict = false, nonstrict = false;
    int shapes = 6, cap = 2, objects = 2, max_hom = 2;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "check a document or an instance bundle");
    validate->add_option("file", path)->required();
    auto* density = app.add_subcommand("density", "decide whether j is dense");
    density->add_option("--j", jpath)->required();
    auto* adjoint = app.add_subcommand("adjoint", "search for a left j-adjoint of r");
    adjoint->add_option("--j", jpath)->required();
    adjoint->add_option("--r", rpath)->required();
    auto* monad = app.add_subcommand("monad", "relative monads");
    monad->require_subcommand(1);
    auto* mvalidate = monad->add_subcommand("validate", "check a monad document");
    mvalidate->add_option("file", path)->required();
    auto* menumerate = monad->add_subcommand("enumerate", "list every j-monad");
    menumerate->add_option("--j", jpath)->required();
    menumerate->add_option("--t", tpath, "fix the carrier");
    auto* algebras = app.add_subcommand("algebras", "build Alg(T)");
    algebras->add_option("--monad", path)->required();
    auto* monadic = app.add_subcommand("monadic", "decide j-monadicity of r");
    monadic->add_option("--j", margs.j)->required();
    monadic->add_option("--r", margs.r)->required();
    monadic->add_flag("--strict", margs.strict);
    monadic->add_flag("--nonstrict", margs.nonstrict);
    monadic->add_flag("--co", margs.co, "comonadicity via the opposites");
    monadic->add_flag("--audit", margs.audit, "cross-check against weighted-colimit creation");
    monadic->add_option("--shapes", margs.shapes, "largest shape, in morphisms")->check(CLI::Range(1, 12));
    monadic->add_option("--cap", margs.cap, "element cap for weights")->check(CLI::Range(1, 4));
    auto* paste = app.add_subcommand("paste", "paste or unpaste relative adjunctions");
    paste->add_option("--inner", inner)->required();
    paste->add_option("--outer", outer)->required();
    paste->add_option("--direction", direction)->check(CLI::IsMember({"paste", "unpaste"}));
    paste->add_option("--r", rpath, "the factor r (unpaste)");
    auto* composite = app.add_subcommand("composite", "monadicity of a composite r ; r'");
    composite->add_option("--j", jpath)->required();
    composite->add_option("--rprime", rppath)->required();
    composite->add_option("--r", rpath)->required();
    composite->add_flag("--strict", strict);
    composite->add_flag("--nonstrict", nonstrict);
    auto* suite = app.add_subcommand("suite", "run the theorem suite");
    suite->add_option("--corpus", corpus, "directory of instance bundles (default: builtin corpus)");
    suite->add_option("--shapes", shapes)->check(CLI::Range(1, 12));
    suite->add_option("--cap", cap)->check(CLI::Range(1, 4));
    auto* generate = app.add_subcommand("generate", "sample a random finite category");
    generate->add_option("--seed", seed);
    generate->add_option("--objects", objects)->check(CLI::Range(0, 4));
    generate->add_option("--max-hom", max_hom)->check(CLI::Range(0, 4));
    generate->add_option("--out", target);
    auto* exportc = app.add_subcommand("export-corpus", "write the builtin instances as bundles");
    exportc->add_option("--out", target)->required();

    // Global options may follow the subcommand.
    for (auto* sc : {validate, density, adjoint, monad, mvalidate, menumerate, algebras, monadic, paste, composite, suite, generate, exportc})
        sc->fallthrough();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (auto* sc : app.get_subcommands()) rep.command = sc->get_name();
        if (monad->parsed()) rep.command += mvalidate->parsed() ? " validate" : " enumerate";

        if (validate->parsed()) cmd_validate(rep, out, path);
        else if (density->parsed()) cmd_density(rep, out, jpath);
        else if (adjoint->parsed()) cmd_adjoint(rep, out, jpath, rpath);
        else if (mvalidate->parsed()) cmd_monad_validate(rep, out, path);
        else if (menumerate->parsed()) cmd_monad_enumerate(rep, out, jpath, tpath);
        else if (algebras->parsed()) cmd_algebras(rep, out, path);
        else if (monadic->parsed()) cmd_monadic(rep, out, margs);
        else if (paste->parsed()) cmd_paste(rep, out, inner, outer, direction, rpath);
        else if (composite->parsed()) cmd_composite(rep, out, jpath, rppath, rpath, pick_mode(strict, nonstrict));
        else if (suite->parsed()) cmd_suite(rep, out, corpus, shapes, cap);
        else if (generate->parsed()) cmd_generate(rep, out, seed, objects, max_hom, target);
        else if (exportc->parsed()) cmd_export(rep, out, target);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitStatus::Pass;
    } catch (const CLI::ParseError& e) {
        rep.status = ExitStatus::InputError;
        rep.error = Json{{"type", "usage"}, {"message", e.what()}};
        report_path = find_report_path(args);
        err << "relmon: " << e.what() << "\n";
    } catch (const ParseError& e) {
        rep.status = ExitStatus::InputError;
        rep.error = Json{{"type", "parse"}, {"location", e.location()}, {"message", e.what()}};
        err << "relmon: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        rep.status = ExitStatus::InputError;
        rep.error = Json{{"type", "validation"}, {"message", e.what()}};
        for (const auto& v : e.violations()) rep.witness(v);
        err << "relmon: invalid input: " << e.first().to_string() << "\n";
    } catch (const IoError& e) {
        rep.status = ExitStatus::InputError;
        rep.error = Json{{"type", "io"}, {"message", e.what()}};
        err << "relmon: " << e.what() << "\n";
    } catch (const ContractError& e) {
        rep.status = ExitStatus::InputError;
        rep.error = Json{{"type", "contract"}, {"kind", e.kind()}, {"message", e.what()}};
        err << "relmon: " << e.kind() << ": " << e.what() << "\n";
    } catch (const BudgetExceeded& e) {
        rep.status = ExitStatus::Budget;
        rep.error = Json{{"type", "budget"}, {"limit", e.limit()}, {"message", e.what()}};
        err << "relmon: " << e.what() << "\n";
    }
    if (rep.error) rep.verdict = to_string(rep.status);
    if (timings)
        rep.durations["total_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

    if (!report_path.empty()) {
        try {
            io::write_json_file(report_path, rep.json());
        } catch (const IoError& e) {
            err << "relmon: " << e.what() << "\n";
            if (rep.status == ExitStatus::Pass) rep.status = ExitStatus::InputError;
        }
    }
    return rep.status;
}

} // namespace relmon
