// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "corpus_util.hpp"

#include <relmon/io.hpp>
#include <relmon/monadicity.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace relmon;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << detail << std::endl;
    failures += !ok;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

const TheoremRow& row(const SuiteReport& s, const std::string& name)
{
    static const TheoremRow empty;
    const TheoremRow* r = s.find(name);
    return r ? *r : empty;
}

bool clean(const TheoremRow& r) { return r.checked > 0 && r.failed == 0; }

std::string row_text(const TheoremRow& r)
{
    return r.theorem + " " + std::to_string(r.passed) + "/" + std::to_string(r.checked) +
           (r.failures.empty() ? std::string() : " first failure: " + r.failures.front());
}

// ---------------------------------------------------------------------------
// Corpus monads and adjunctions used by several criteria.

struct Material {
    std::vector<RelativeMonad> monads;
    std::vector<RelativeAdjunction> adjunctions;  // discovered by the adjoint search or shipped
};

Material gather(const std::vector<Instance>& corpus)
{
    Material m;
    for (const auto& inst : corpus) {
        const Functor& j = inst.functors.at("j");
        for (const auto& [role, T] : inst.monads) m.monads.push_back(T);
        const auto all = enumerate_relative_monads(j);
        for (std::size_t k = 0; k < all.size() && k < 6; ++k)
            if (std::find(m.monads.begin(), m.monads.end(), all[k]) == m.monads.end()) m.monads.push_back(all[k]);
        for (const auto& [role, a] : inst.adjunctions) m.adjunctions.push_back(a);
        for (const auto& [role, r] : inst.functors)
            if (role.front() == 'r')
                if (auto a = find_left_relative_adjoint(j, r)) m.adjunctions.push_back(*a);
        if (auto a = find_left_relative_adjoint(j, identity_functor(j.cod))) m.adjunctions.push_back(*a);
    }
    return m;
}

// ---------------------------------------------------------------------------
// 1. Mutations

struct MutationStats {
    std::size_t rejected = 0;
    std::size_t missed = 0;
    std::size_t lawful_redraws = 0;
    std::string first_miss;
};

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v)
{
    return v[rng() % v.size()];
}

std::vector<std::string> hom_names(const FinCategory& c, ObjId x, ObjId y)
{
    std::vector<std::string> out;
    for (MorId f : c.hom(x, y)) out.push_back(c.morphism_name(f));
    return out;
}

std::string other_than(std::mt19937& rng, const std::vector<std::string>& choices, const std::string& current)
{
    std::vector<std::string> rest;
    for (const auto& c : choices)
        if (c != current) rest.push_back(c);
    return pick(rng, rest);
}

bool located(const std::vector<Violation>& vs) { return !vs.empty() && !vs.front().witness.empty(); }

// Returns nullopt when the mutant is lawful (then it is redrawn).
std::optional<bool> mutate_category(std::mt19937& rng, const CatPtr& c)
{
    auto d = c->describe();
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& [key, h] : d.composition) {
        const MorId f = c->morphism(key.first), g = c->morphism(key.second);
        if (c->hom(c->dom(f), c->cod(g)).size() >= 2) keys.push_back(key);
    }
    if (keys.empty()) return std::nullopt;
    const auto key = pick(rng, keys);
    const MorId f = c->morphism(key.first), g = c->morphism(key.second);
    d.composition[key] = other_than(rng, hom_names(*c, c->dom(f), c->cod(g)), d.composition[key]);
    if (oracle::is_category(oracle::table_of(d))) return std::nullopt;
    const auto vs = FinCategory::check(d);
    return located(vs);
}

std::optional<bool> mutate_monad(std::mt19937& rng, const RelativeMonad& T)
{
    const auto& A = *T.j.dom;
    const auto& E = *T.j.cod;
    auto d = describe(T);
    // Slots: unit entries then extension entries, each with at least two choices.
    std::vector<std::pair<std::string, std::tuple<std::string, std::string, std::string>>> slots;
    for (const auto& [a, m] : d.unit)
        if (E.hom(T.j(A.object(a)), T.t(A.object(a))).size() >= 2) slots.push_back({a, {}});
    for (const auto& [key, g] : d.ext)
        if (E.hom(T.t(A.object(std::get<0>(key))), T.t(A.object(std::get<1>(key)))).size() >= 2) slots.push_back({"", key});
    if (slots.empty()) return std::nullopt;
    const auto slot = pick(rng, slots);
    if (!slot.first.empty()) {
        const ObjId a = A.object(slot.first);
        d.unit[slot.first] = other_than(rng, hom_names(E, T.j(a), T.t(a)), d.unit[slot.first]);
    } else {
        const ObjId a = A.object(std::get<0>(slot.second)), b = A.object(std::get<1>(slot.second));
        d.ext[slot.second] = other_than(rng, hom_names(E, T.t(a), T.t(b)), d.ext[slot.second]);
    }
    std::vector<int> unit(A.num_objects());
    for (const auto& [a, m] : d.unit) unit[A.object(a)] = E.morphism(m);
    oracle::ExtMap ext;
    for (const auto& [key, g] : d.ext)
        ext[{A.object(std::get<0>(key)), A.object(std::get<1>(key)), E.morphism(std::get<2>(key))}] = E.morphism(g);
    if (oracle::is_relative_monad(T.j, T.t, unit, ext)) return std::nullopt;
    try {
        validate_relative_monad(T.j, T.t, d);
        return false;
    } catch (const ValidationError& e) {
        return located(e.violations());
    }
}

std::optional<bool> mutate_adjunction(std::mt19937& rng, const RelativeAdjunction& adj)
{
    const auto& A = *adj.j.dom;
    const auto& C = *adj.l.cod;
    const auto& E = *adj.j.cod;
    auto d = describe(adj);
    std::vector<std::tuple<std::string, std::string, std::string>> slots;
    for (const auto& [key, f] : d.sharp)
        if (E.hom(adj.j(A.object(std::get<0>(key))), adj.r(C.object(std::get<1>(key)))).size() >= 2) slots.push_back(key);
    if (slots.empty()) return std::nullopt;
    const auto key = pick(rng, slots);
    const ObjId a = A.object(std::get<0>(key)), c = C.object(std::get<1>(key));
    d.sharp[key] = other_than(rng, hom_names(E, adj.j(a), adj.r(c)), d.sharp[key]);
    oracle::SharpMap sharp;
    for (const auto& [k, f] : d.sharp) sharp[{A.object(std::get<0>(k)), C.morphism(std::get<2>(k))}] = E.morphism(f);
    if (oracle::is_relative_adjunction(adj.j, adj.l, adj.r, sharp)) return std::nullopt;
    try {
        validate_relative_adjunction(adj.j, adj.l, adj.r, d);
        return false;
    } catch (const ValidationError& e) {
        return located(e.violations());
    }
}

void criterion_laws(const std::vector<Instance>& corpus)
{
    const auto t0 = Clock::now();
    std::size_t valid = 0;
    for (const auto& inst : corpus) valid += check_instance(inst).empty();

    std::vector<CatPtr> cats;
    for (const char* n : {"Interval", "Indisc2", "BZ2", "BM3", "Idem", "ParallelPair", "Split", "Span", "Pushout", "NoReflect"})
        cats.push_back(builtin_category(n));
    const Material m = gather(corpus);
    std::vector<RelativeMonad> monads = m.monads;
    std::vector<RelativeAdjunction> adjs = m.adjunctions;
    for (const auto& c : cats) adjs.push_back(identity_adjunction(c));
    for (const auto& T : m.monads) adjs.push_back(build_algebra_category(T).adjunction);

    std::mt19937 rng(20240611);
    MutationStats st;
    std::size_t per_kind[3] = {0, 0, 0};
    for (int drawn = 0; st.rejected + st.missed < 100 && drawn < 100000; ++drawn) {
        const int kind = drawn % 3;
        std::optional<bool> r;
        if (kind == 0) r = mutate_category(rng, pick(rng, cats));
        else if (kind == 1) r = mutate_monad(rng, pick(rng, monads));
        else r = mutate_adjunction(rng, pick(rng, adjs));
        if (!r) {
            ++st.lawful_redraws;
            continue;
        }
        ++per_kind[kind];
        if (*r) ++st.rejected;
        else ++st.missed;
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << valid << "/" << corpus.size() << " instances valid; " << st.rejected << "/100 mutants rejected with a located witness ("
       << per_kind[0] << " composition, " << per_kind[1] << " monad, " << per_kind[2] << " adjunction; " << st.lawful_redraws
       << " redraws); " << fmt_seconds(secs);
    report(1, "law suites", valid == corpus.size() && corpus.size() >= 12 && st.rejected == 100 && secs < 10.0, os.str());
}

// ---------------------------------------------------------------------------

void criterion_resolution(const std::vector<Instance>& corpus, const SuiteReport& s)
{
    const Material m = gather(corpus);
    std::size_t adj_ok = 0, monad_ok = 0;
    for (const auto& a : m.adjunctions) {
        const auto T = monad_from_adjunction(a);
        try {
            validate_relative_monad(T.j, T.t, describe(T));
            ++adj_ok;
        } catch (const ValidationError&) {
        }
    }
    for (const auto& T : m.monads) monad_ok += monad_from_adjunction(build_algebra_category(T).adjunction) == T;
    std::ostringstream os;
    os << adj_ok << "/" << m.adjunctions.size() << " discovered adjunctions induce valid monads; " << monad_ok << "/"
       << m.monads.size() << " monads recovered from f_T ⊣ u_T; " << row_text(row(s, "resolution")) << "; "
       << row_text(row(s, "terminal_resolution"));
    report(2, "resolution", adj_ok == m.adjunctions.size() && monad_ok == m.monads.size() && !m.monads.empty() &&
                                clean(row(s, "resolution")) && clean(row(s, "terminal_resolution")),
           os.str());
}

void criterion_degenerate(const std::vector<Instance>& corpus, const SuiteReport& s)
{
    std::size_t n = 0, ok = 0;
    for (const auto& inst : corpus) {
        const Functor& j = inst.functors.at("j");
        if (j.dom->num_objects() != 0) continue;
        for (const auto& [role, r] : inst.functors) {
            if (role.front() != 'r') continue;
            ++n;
            ok += decide_monadicity(j, r, MonadicityMode::Strict).monadic() == classify_functor(r).is_iso;
        }
        const Functor id = identity_functor(j.cod);
        ++n;
        ok += decide_monadicity(j, id, MonadicityMode::Strict).monadic() == classify_functor(id).is_iso;
    }
    report(6, "degenerate root", n > 0 && ok == n && clean(row(s, "degenerate_root")),
           std::to_string(ok) + "/" + std::to_string(n) + " functors over []_E agree with is_iso; " + row_text(row(s, "degenerate_root")));
}

void criterion_transport(const std::vector<Instance>& corpus, const SuiteReport& s)
{
    const CatPtr& one = terminal_category();
    const CatPtr interval = builtin_category("Interval");
    std::vector<Distributor> grades = enumerate_distributors(one, one, 2);
    for (auto& p : enumerate_distributors(one, interval, 1)) grades.push_back(p);
    for (auto& p : enumerate_distributors(interval, one, 1)) grades.push_back(p);
    std::set<std::string> instances;
    std::size_t runs = 0, ok = 0, algebras = 0, morphisms = 0;
    for (const auto& inst : corpus) {
        const auto all = enumerate_relative_monads(inst.functors.at("j"));
        std::size_t inst_runs = 0;
        bool inst_ok = true;
        for (std::size_t k = 0; k < all.size() && k < 2; ++k) {
            const auto base = build_algebra_category(all[k]);
            const auto layered = enumerate_relative_monads(base.f);
            for (std::size_t q = 0; q < layered.size() && q < 2; ++q) {
                const auto tr = transport_algebras(base, layered[q], {one, interval}, grades);
                ++runs;
                ++inst_runs;
                ok += tr.round_trips && tr.passed;
                inst_ok = inst_ok && tr.round_trips && tr.passed;
                algebras += tr.algebras;
                morphisms += tr.morphisms;
            }
        }
        if (inst_ok && inst_runs > 0) instances.insert(inst.name);
    }
    std::ostringstream os;
    os << ok << "/" << runs << " transports round-trip over " << instances.size() << " instances (" << algebras << " algebras, "
       << morphisms << " graded morphisms); " << row_text(row(s, "transport"));
    report(8, "transport", ok == runs && instances.size() >= 3 && clean(row(s, "transport")), os.str());
}

void criterion_oracle()
{
    const auto committed = testing_util::committed_oracle();
    const auto& pinned = committed["monoids"]["BZ2"];
    const Functor j = constant_functor(terminal_category(), builtin_category("BZ2"), 0);
    const auto monads = enumerate_relative_monads(j);
    const auto brute = oracle::point_monads(oracle::oracle_monoids().at("BZ2"));
    bool ok = monads.size() == pinned["monad_count"].get<std::size_t>() && brute.size() == monads.size();
    std::ostringstream os;
    os << "point → BZ2: engine " << monads.size() << " monads, committed " << pinned["monad_count"] << ", brute force "
       << brute.size() << "; algebra counts";
    for (const auto& T : monads) {
        const auto p = testing_util::as_point_monad(T);
        const std::size_t engine = enumerate_algebras(T, terminal_category()).size();
        std::size_t expected = static_cast<std::size_t>(-1);
        for (const auto& e : pinned["monads"])
            if (e["eta"] == p.eta && e["ext"] == p.ext) expected = e["point_algebras"].get<std::size_t>();
        ok = ok && engine == expected;
        os << " " << engine << "=" << expected;
    }
    report(9, "oracle equality", ok, os.str());
}

void criterion_duality(const std::vector<Instance>& corpus, const SuiteReport& s)
{
    std::size_t n = 0, ok = 0;
    for (const auto& inst : corpus) {
        const Functor& j = inst.functors.at("j");
        std::vector<Functor> rs{identity_functor(j.cod)};
        for (const auto& [role, r] : inst.functors)
            if (role.front() == 'r') rs.push_back(r);
        for (const auto& r : rs)
            for (auto mode : {MonadicityMode::Strict, MonadicityMode::NonStrict}) {
                ++n;
                ok += decide_monadicity(opposite(j), opposite(r), mode, true).verdict == decide_monadicity(j, r, mode).verdict;
            }
    }
    report(10, "duality", ok == n && clean(row(s, "duality")),
           std::to_string(ok) + "/" + std::to_string(n) + " dualized verdicts agree; " + row_text(row(s, "duality")));
}

// ---------------------------------------------------------------------------
// 11. CLI

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int shell(const std::string& cmd)
{
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void criterion_cli(const fs::path& scratch)
{
    const std::string cli = RELMON_CLI;
    const std::string fx = RELMON_FIXTURES;
    const auto r1 = scratch / "suite1.json", r2 = scratch / "suite2.json";
    const int e1 = shell(cli + " suite --report " + r1.string() + " > /dev/null");
    const int e2 = shell(cli + " suite --report " + r2.string() + " > /dev/null");
    const std::string a = slurp(r1), b = slurp(r2);
    const bool same = !a.empty() && a == b && e1 == 0 && e2 == 0;

    struct Case {
        std::string env, args;
        int expected;
    };
    const std::vector<Case> matrix = {
        {"", "monadic --j " + fx + "/id_E.json --r " + fx + "/id_E.json --strict", 0},
        {"", "monadic --j " + fx + "/empty_root.json --r " + fx + "/swap.json", 0},
        {"", "monad validate " + fx + "/monad_point_bz2.json", 0},
        {"", "suite --corpus " + std::string(RELMON_CORPUS_DIR) + "/instances/Terminal", 0},
        {"", "monadic --j " + fx + "/empty_root.json --r " + fx + "/noniso.json", 1},
        {"", "monad validate " + fx + "/bad_monad.json", 1},
        {"", "density --j " + fx + "/point_bz2.json", 1},
        {"", "validate " + fx + "/dangling.json", 1},
        {"", "generate --seed 1 --objects 4 --max-hom 4", 2},
        {"", "validate " + fx + "/malformed.json", 3},
        {"", "monadic --j " + fx + "/not_json.json --r " + fx + "/id_E.json", 3},
        {"", "monadic --j " + fx + "/missing.json --r " + fx + "/id_E.json", 3},
        {"", "monadic --j " + fx + "/id_E.json", 3},
        {"", "frobnicate", 3},
        {"RELMON_BUDGET=5 ", "monad enumerate --j " + fx + "/id_E.json", 4},
    };
    std::size_t ok = 0;
    std::string first_bad;
    for (std::size_t k = 0; k < matrix.size(); ++k) {
        const auto rp = scratch / ("case" + std::to_string(k) + ".json");
        const int code = shell(matrix[k].env + cli + " " + matrix[k].args + " --report " + rp.string() + " > /dev/null 2>&1");
        bool good = code == matrix[k].expected;
        try {
            const auto rep = io::read_json_file(rp.string());
            good = good && rep["schema"] == 1 && rep["exit_code"] == code && (code < 3 || rep.contains("error"));
        } catch (const std::exception&) {
            good = false;
        }
        ok += good;
        if (!good && first_bad.empty()) first_bad = matrix[k].args + " -> " + std::to_string(code);
    }
    std::ostringstream os;
    os << "suite reports " << (same ? "byte-identical" : "DIFFER") << " (" << a.size() << " bytes, exits " << e1 << "/" << e2
       << "); exit-code matrix " << ok << "/" << matrix.size();
    if (!first_bad.empty()) os << " first mismatch: " << first_bad;
    report(11, "CLI determinism", same && ok == matrix.size(), os.str());
}

} // namespace

int main()
{
    const fs::path scratch = fs::temp_directory_path() / "relmon_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const auto& corpus = testing_util::corpus();

    criterion_laws(corpus);

    const auto t0 = Clock::now();
    const SuiteReport s = run_theorem_suite(corpus);
    const double suite_secs = seconds_since(t0);

    criterion_resolution(corpus, s);
    report(3, "forgetful creation",
           clean(row(s, "forgetful_conservative")) && clean(row(s, "forgetful_creation")) && suite_secs < 300.0,
           row_text(row(s, "forgetful_conservative")) + "; " + row_text(row(s, "forgetful_creation")) + "; suite " +
               fmt_seconds(suite_secs));
    report(4, "algebra object", clean(row(s, "algebra_object")), row_text(row(s, "algebra_object")) + " (each T with its restricted control)");
    {
        const auto& census = s.census;
        auto get = [&](const char* k) { return census.count(k) ? census.at(k) : 0; };
        std::ostringstream os;
        os << row_text(row(s, "monadicity_theorem")) << "; " << row_text(row(s, "split_retraction")) << "; witnesses "
           << get("audit_witnesses") << ", inconclusive " << get("audit_inconclusive") << ", density exhibits "
           << get("density_exhibits");
        report(5, "monadicity cross-check", clean(row(s, "monadicity_theorem")) && clean(row(s, "split_retraction")), os.str());
    }
    criterion_degenerate(corpus, s);
    {
        const auto& comp = row(s, "composite_monadicity");
        const auto& paste = row(s, "pasting");
        report(7, "pasting", clean(comp) && clean(paste) && paste.checked >= 5,
               row_text(paste) + "; " + row_text(comp) + " (strict and non-strict)");
    }
    criterion_transport(corpus, s);
    criterion_oracle();
    criterion_duality(corpus, s);
    criterion_cli(scratch);

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    fs::remove_all(scratch);
    return failures == 0 ? 0 : 1;
}
