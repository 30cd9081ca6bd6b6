#include "relmon/monadicity.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace relmon {

std::string to_string(MonadicityMode m) { return m == MonadicityMode::Strict ? "strict" : "nonstrict"; }

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Monadic: return "monadic";
    case Verdict::NotMonadic: return "not_monadic";
    case Verdict::NoAdjoint: return "no_adjoint";
    }
    return "?";
}

CreationMode creation_mode(MonadicityMode m)
{
    return m == MonadicityMode::Strict ? CreationMode::Strict : CreationMode::NonStrict;
}

MonadicityReport decide_monadicity(const Functor& j, const Functor& r, MonadicityMode mode, bool co)
{
    if (co) {
        MonadicityReport rep = decide_monadicity(opposite(j), opposite(r), mode, false);
        rep.co = true;
        return rep;
    }
    if (!same_category(j.cod, r.cod)) throw ContractError("EndpointMismatch", "root and right functor have different codomains");
    MonadicityReport rep;
    rep.mode = mode;
    rep.adjunction = find_left_relative_adjoint(j, r);
    if (!rep.adjunction) {
        rep.verdict = Verdict::NoAdjoint;
        rep.witnesses.push_back(Violation{"NoAdjoint", {}, "no left relative adjoint"});
        return rep;
    }
    rep.monad = monad_from_adjunction(*rep.adjunction);
    rep.algebras = build_algebra_category(*rep.monad);
    rep.comparison = comparison_functor(*rep.adjunction, *rep.algebras);
    rep.classification = classify_functor(rep.comparison->K);
    const bool ok = mode == MonadicityMode::Strict ? rep.classification.is_iso : rep.classification.is_equivalence;
    rep.verdict = ok ? Verdict::Monadic : Verdict::NotMonadic;
    if (!ok) {
        std::vector<std::string> flags;
        for (const auto& [flag, names] : rep.classification.witnesses) {
            flags.push_back(flag);
            for (const auto& n : names) flags.push_back(n);
        }
        rep.witnesses.push_back(mode == MonadicityMode::Strict
                                    ? Violation{"ComparisonNotIso", flags, "comparison not iso"}
                                    : Violation{"ComparisonNotEquivalence", flags, "comparison not an equivalence"});
    }
    if (!rep.comparison->unique)
        rep.witnesses.push_back(Violation{"ComparisonNotUnique", {std::to_string(rep.comparison->lift_count)},
                                          "the resolution does not factor uniquely through Alg(T)"});
    return rep;
}

// ---------------------------------------------------------------------------

ShapeFamily shape_family(int max_morphisms, int element_cap)
{
    static const std::vector<std::string> order = {"Empty", "Terminal", "Disc2", "BZ2", "Idem", "Interval", "Indisc2", "ParallelPair", "Split"};
    ShapeFamily fam;
    fam.element_cap = element_cap;
    for (const auto& name : order) {
        auto c = builtin_category(name);
        if (c->num_morphisms() > max_morphisms) continue;
        fam.names.push_back(name);
        fam.shapes.push_back(c);
    }
    return fam;
}

namespace {

const std::vector<Distributor>& cached_distributors(const CatPtr& src, const CatPtr& tgt, int cap)
{
    static std::map<std::tuple<const FinCategory*, const FinCategory*, int>, std::vector<Distributor>> cache;
    auto key = std::make_tuple(src.get(), tgt.get(), cap);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_distributors(src, tgt, cap)).first;
    return it->second;
}

struct Case {
    std::string label;
    const Distributor* p;
    const Functor* f;
};

// Visits every (weight, diagram) pair of the family with diagrams into W.
// Colimit diagrams live on the weight's target, limit diagrams on its source.
void for_each_case(const ShapeFamily& fam, const CatPtr& W, CreationKind kind, const std::function<void(const Case&)>& visit)
{
    for (std::size_t xi = 0; xi < fam.shapes.size(); ++xi)
        for (std::size_t yi = 0; yi < fam.shapes.size(); ++yi) {
            const auto& X = fam.shapes[xi];
            const auto& Y = fam.shapes[yi];
            const auto& weights = cached_distributors(X, Y, fam.element_cap);
            if (weights.empty()) continue;
            const auto diagrams = enumerate_functors(kind == CreationKind::Colimit ? Y : X, W);
            for (std::size_t pi = 0; pi < weights.size(); ++pi)
                for (std::size_t fi = 0; fi < diagrams.size(); ++fi) {
                    const std::string label = to_string(kind) + ":" + fam.names[xi] + "->" + fam.names[yi] + "#" +
                                              std::to_string(pi) + "/f" + std::to_string(fi);
                    visit(Case{label, &weights[pi], &diagrams[fi]});
                }
        }
}

AuditItem make_item(std::string kind, std::string label, bool absolute, const CreationReport& cr)
{
    AuditItem it;
    it.kind = std::move(kind);
    it.label = std::move(label);
    it.absolute = absolute;
    it.passed = cr.passed;
    it.violations = cr.violations;
    return it;
}

// Independent re-check of a strict failure: count lifts by brute force over
// all apexes and legs, without the pruning used by check_creation.
bool strict_failure_confirmed(const Functor& g, const Distributor& p, const Functor& f, const Cocone& down)
{
    const auto all = enumerate_cocones(p, f, enumerate_functors(p.src, g.dom));
    std::size_t lifts = 0;
    bool colimiting = false;
    ColimitContext up(p, f);
    for (const auto& c : all) {
        if (!(compose(c.apex, g) == down.apex)) continue;
        bool same = true;
        for (std::size_t i = 0; same && i < c.legs.size(); ++i)
            for (std::size_t u = 0; same && u < c.legs[i].size(); ++u) same = g.map(c.legs[i][u]) == down.legs[i][u];
        if (!same) continue;
        ++lifts;
        colimiting = up.is_colimiting(c);
    }
    return lifts != 1 || !colimiting;
}

} // namespace

std::vector<AuditReport> creation_audits(const Functor& j, const Functor& r, const ShapeFamily& family,
                                        const std::vector<MonadicityMode>& modes)
{
    std::vector<AuditReport> reps(modes.size());
    std::vector<MonadicityReport> decs;
    const bool dense = is_dense(j).dense;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        AuditReport& rep = reps[i];
        rep.mode = modes[i];
        decs.push_back(decide_monadicity(j, r, modes[i]));
        rep.verdict = decs[i].verdict;
        rep.dense = dense;
        if (!decs[i].adjunction) {
            rep.vacuous = true;
            rep.reason = "no left relative adjoint; the audit is vacuous";
            continue;
        }
        if (!dense) rep.reason = "root is not dense; the theorem does not apply and only the counterexample semantics are recorded";
        live.push_back(i);
    }
    if (live.empty()) return reps;
    const CatPtr& C = r.dom;

    auto record = [](AuditReport& rep, AuditItem item, bool keep) {
        if (item.passed) ++rep.passed;
        else ++rep.failed;
        if (keep || !item.passed) rep.items.push_back(std::move(item));
    };
    auto census = [&](const std::string& key) {
        for (std::size_t i : live) ++reps[i].census[key];
    };

    // Downstairs data depends on f ; r only, and distinct f often agree after r.
    using Key = std::tuple<const Distributor*, std::vector<ObjId>, std::vector<MorId>>;
    struct Downstairs {
        const char* outcome; // census key
        std::optional<Cocone> cocone;
    };
    std::map<Key, Downstairs> colimits;
    for_each_case(family, C, CreationKind::Colimit, [&](const Case& k) {
        census("colimit_cases");
        const Functor fr = compose(*k.f, r);
        const Key key{k.p, fr.obj, fr.mor};
        auto it = colimits.find(key);
        if (it == colimits.end()) {
            Downstairs d{"colimit_absent", std::nullopt};
            if (auto down = weighted_colimit(*k.p, fr)) {
                if (is_j_absolute(j, down->cocone).absolute) {
                    d.outcome = "colimit_absolute";
                    d.cocone = std::move(down->cocone);
                } else {
                    d.outcome = "colimit_not_absolute";
                }
            }
            it = colimits.emplace(key, std::move(d)).first;
        }
        if (!it->second.cocone) {
            census(it->second.outcome);
            return;
        }
        census("colimit_absolute");
        const Cocone& down = *it->second.cocone;
        for (std::size_t i : live) {
            AuditReport& rep = reps[i];
            const CreationMode cm = creation_mode(modes[i]);
            auto cr = check_creation(r, *k.p, *k.f, cm, CreationKind::Colimit, down);
            AuditItem item = make_item("colimit", k.label, true, cr);
            if (!item.passed && !decs[i].monadic() && dense) {
                const bool confirmed = modes[i] == MonadicityMode::Strict
                                           ? strict_failure_confirmed(r, *k.p, *k.f, down)
                                           : !check_creation(r, *k.p, *k.f, cm, CreationKind::Colimit).passed;
                item.note = confirmed ? "reverified" : "not reverified";
                rep.witness_found = rep.witness_found || confirmed;
            }
            record(rep, std::move(item), false);
        }
    });
    std::map<Key, std::optional<Cocone>> limits; // dual cones
    for_each_case(family, C, CreationKind::Limit, [&](const Case& k) {
        census("limit_cases");
        const Functor fr = compose(*k.f, r);
        const Key key{k.p, fr.obj, fr.mor};
        auto it = limits.find(key);
        if (it == limits.end()) {
            std::optional<Cocone> keep;
            if (auto down = weighted_limit(*k.p, fr)) keep = dual_cone(down->cone);
            it = limits.emplace(key, std::move(keep)).first;
        }
        if (!it->second) {
            census("limit_absent");
            return;
        }
        census("limit_present");
        for (std::size_t i : live) {
            AuditReport& rep = reps[i];
            const CreationMode cm = creation_mode(modes[i]);
            auto cr = check_creation(r, *k.p, *k.f, cm, CreationKind::Limit, *it->second);
            AuditItem item = make_item("limit", k.label, false, cr);
            if (!item.passed && !decs[i].monadic() && dense) {
                const bool confirmed = !check_creation(r, *k.p, *k.f, cm, CreationKind::Limit).passed;
                item.note = confirmed ? "reverified" : "not reverified";
                rep.witness_found = rep.witness_found || confirmed;
            }
            record(rep, std::move(item), false);
        }
    });

    for (std::size_t i : live) {
        AuditReport& rep = reps[i];
        const MonadicityReport& dec = decs[i];
        const MonadicityMode mode = modes[i];
        const CreationMode cm = creation_mode(mode);

        // Targeted extensions from the proof: K ▷ r with apex u_T, then its lift.
        const Functor& K = dec.comparison->K;
        const Functor& u = dec.algebras->u;
        {
            const Cocone ext = extension_cocone(K, r, u);
            ColimitContext ctx(ext.weight, ext.diagram);
            const bool colimiting = check_cocone(ext).empty() && ctx.is_colimiting(ext);
            AuditItem item;
            item.kind = "extension";
            item.label = "K|>r";
            item.absolute = colimiting && is_j_absolute(j, ext).absolute;
            std::optional<Cocone> lift;
            if (!colimiting || !item.absolute) {
                item.passed = false;
                item.note = colimiting ? "u_T is not a j-absolute left extension" : "u_T is not the left extension K|>r";
                item.violations.push_back(Violation{"NotAnExtension", {}, item.note});
            } else {
                auto cr = check_creation(r, ext.weight, identity_functor(C), cm, CreationKind::Colimit, ext);
                item.passed = cr.passed;
                item.violations = cr.violations;
                lift = cr.lift;
            }
            if (!item.passed && !dense && !colimiting) {
                item.note = "skipped: root not dense, u_T need not be K|>r";
                ++rep.census["skipped_extension"];
                rep.items.push_back(item);
            } else {
                if (!item.passed && !dec.monadic() && dense) {
                    item.note += item.note.empty() ? "reverified" : "; reverified";
                    rep.witness_found = true;
                }
                rep.extension_ok = item.passed;
                record(rep, item, true);
            }

            if (rep.extension_ok && lift) {
                const Functor d = lift->apex;
                const Functor Kd = compose(K, d);
                const Functor id = identity_functor(C);
                AuditItem ret;
                ret.kind = "retraction";
                ret.label = "K;(K|>1)";
                ret.passed = mode == MonadicityMode::Strict ? Kd == id : find_natural_isomorphism(Kd, id).has_value();
                if (!ret.passed) ret.violations.push_back(Violation{"NotARetraction", {}, "K ; d is not the identity"});
                rep.retraction_ok = ret.passed;
                record(rep, ret, true);
            }
        }
        {
            const Functor id = identity_functor(C);
            const Cocone ext = extension_cocone(id, r, r);
            auto cr = check_creation(r, ext.weight, id, cm, CreationKind::Colimit, ext);
            record(rep, make_item("identity_extension", "1|>r", is_j_absolute(j, ext).absolute, cr), true);
        }

        if (dec.monadic()) {
            if (rep.failed > 0) {
                std::string first;
                for (const auto& it : rep.items)
                    if (!it.passed && it.note.rfind("skipped", 0) != 0) {
                        first = it.label;
                        break;
                    }
                rep.discrepancies.push_back(Violation{"Unsound", {first}, "monadic, yet the audit found a creation failure"});
            }
            if (!rep.retraction_ok)
                rep.discrepancies.push_back(Violation{"NoRetraction", {}, "monadic, yet K|>1 is not a retraction of K"});
        } else if (dense) {
            rep.inconclusive = !rep.witness_found;
        }
        rep.census["items_passed"] = rep.passed;
        rep.census["items_failed"] = rep.failed;
    }
    return reps;
}

AuditReport creation_audit(const Functor& j, const Functor& r, const ShapeFamily& family, MonadicityMode mode)
{
    return creation_audits(j, r, family, {mode}).front();
}

// ---------------------------------------------------------------------------

CompositeReport decide_composite_monadicity(const Functor& j, const Functor& rprime, const Functor& r, MonadicityMode mode)
{
    if (!same_category(r.cod, rprime.dom)) throw ContractError("EndpointMismatch", "r does not land in the domain of r'");
    MonadicityReport pre = decide_monadicity(j, rprime, mode);
    if (!pre.monadic()) throw ContractError("PremiseFail", "r' is not " + to_string(mode) + "ly j-monadic");
    CompositeReport rep;
    rep.mode = mode;
    rep.outer = *pre.adjunction;
    rep.left = decide_monadicity(rep.outer.l, r, mode);
    rep.right = decide_monadicity(j, compose(r, rprime), mode);
    rep.holds = rep.left.monadic() == rep.right.monadic();
    if (!rep.holds)
        throw ContractError("TheoremViolation", "r is " + to_string(rep.left.verdict) + " over l' but r;r' is " +
                                                    to_string(rep.right.verdict) + " over j");
    return rep;
}

LeftAdjointCriterionReport check_monadic_iff_left_adjoint(const Functor& j, const Functor& jprime, const RelativeMonad& T,
                                                          MonadicityMode mode)
{
    if (!same_category(j.cod, jprime.dom)) throw ContractError("EndpointMismatch", "j does not land in the domain of j'");
    if (!(T.j == compose(j, jprime))) throw ContractError("EndpointMismatch", "the monad is not relative to j ; j'");
    if (!is_dense(jprime).dense) throw ContractError("Inapplicable", "j' is not dense");
    const AlgebraCategory algcat = build_algebra_category(T);
    LeftAdjointCriterionReport rep;
    rep.has_adjoint = find_left_relative_adjoint(jprime, algcat.u).has_value();
    rep.monadicity = decide_monadicity(jprime, algcat.u, mode);
    rep.holds = rep.has_adjoint == rep.monadicity.monadic();
    return rep;
}

// ---------------------------------------------------------------------------

TheoremRow& SuiteReport::row(const std::string& name)
{
    for (auto& r : rows)
        if (r.theorem == name) return r;
    rows.push_back(TheoremRow{name, 0, 0, 0, 0, {}, {}});
    return rows.back();
}

const TheoremRow* SuiteReport::find(const std::string& name) const
{
    for (const auto& r : rows)
        if (r.theorem == name) return &r;
    return nullptr;
}

namespace {

const std::vector<std::string> kTheorems = {
    "resolution",          "terminal_resolution",  "algebra_object",    "forgetful_conservative",
    "forgetful_creation",  "preservation_conservativity", "monadicity_theorem", "split_retraction",
    "degenerate_root",     "right_morphism",       "duality",           "monadic_iff_left_adjoint",
    "pasting",             "transport",            "composite_monadicity", "cancellability",
    "algebraic_tight_cell",
};

constexpr std::size_t kMaxFailures = 20;

class Suite {
public:
    Suite(SuiteReport& rep, const SuiteBounds& bounds) : rep_(rep), bounds_(bounds) {}

    void check(const std::string& theorem, const std::string& label, const std::function<bool()>& body)
    {
        auto& row = rep_.row(theorem);
        ++row.checked;
        bool ok = false;
        std::string why;
        try {
            ok = body();
        } catch (const ContractError& e) {
            why = " (" + e.kind() + ": " + e.what() + ")";
        } catch (const ValidationError& e) {
            why = " (" + e.first().to_string() + ")";
        }
        if (ok) {
            ++row.passed;
            return;
        }
        ++row.failed;
        if (row.failures.size() < kMaxFailures) row.failures.push_back(label + why);
    }

    void skip(const std::string& theorem, const std::string& note)
    {
        auto& row = rep_.row(theorem);
        ++row.skipped;
        if (row.notes.size() < kMaxFailures) row.notes.push_back(note);
    }

    void count(const std::string& key, std::size_t n = 1) { rep_.census[key] += n; }

    void run(const Instance& inst);

private:
    SuiteReport& rep_;
    const SuiteBounds& bounds_;

    void monad_checks(const std::string& where, const Functor& j, const RelativeMonad& T, const AlgebraCategory& algcat);
    void functor_checks(const std::string& where, const Functor& j, bool dense, const Functor& r);
    void layered_checks(const std::string& where, const Functor& j, const AlgebraCategory& base);
    void tight_cell_checks(const std::string& where, const Functor& j, const Functor& i, const Functor& r);
    void cancellability_checks(const std::string& where, const AlgebraCategory& base);
    std::vector<std::pair<std::string, Functor>> test_functors(const CatPtr& E, std::size_t limit) const;
};

std::vector<std::pair<std::string, Functor>> Suite::test_functors(const CatPtr& E, std::size_t limit) const
{
    std::vector<std::pair<std::string, Functor>> out;
    for (const char* name : {"Terminal", "Disc2", "Interval", "BZ2", "Indisc2"}) {
        std::size_t k = 0;
        for (auto& f : enumerate_functors(builtin_category(name), E)) {
            if (out.size() >= limit) return out;
            out.emplace_back(std::string("gen:") + name + "#" + std::to_string(k++), std::move(f));
            if (k >= 2) break;
        }
    }
    return out;
}

void Suite::monad_checks(const std::string& where, const Functor& j, const RelativeMonad& T, const AlgebraCategory& algcat)
{
    check("resolution", where, [&] {
        return check_relative_adjunction(algcat.adjunction).empty() && monad_from_adjunction(algcat.adjunction) == T;
    });
    check("terminal_resolution", where, [&] {
        const auto cmp = comparison_functor(algcat.adjunction, algcat);
        return cmp.unique && cmp.commutes_with_forgetful && cmp.commutes_with_free && classify_functor(cmp.K).is_iso;
    });
    check("algebra_object", where, [&] { return verify_algebra_object(algcat.generic, T, bounds_.algebra_object).passed; });
    if (algcat.cat->num_objects() == 0) skip("algebra_object", where + " restricted: Alg(T) is empty");
    else check("algebra_object", where + " restricted", [&] {
        std::vector<ObjId> keep;
        for (int m = 0; m + 1 < algcat.cat->num_objects(); ++m) keep.push_back(m);
        const Algebra candidate = restrict_algebra(algcat.generic, full_subcategory(algcat.cat, keep));
        const auto rep = verify_algebra_object(candidate, T, bounds_.algebra_object);
        return rep.precheck && !rep.clause1 && !rep.violations.empty();
    });
    check("forgetful_conservative", where, [&] { return classify_functor(algcat.u).conservative; });
    for (const auto& a : creation_audits(j, algcat.u, bounds_.family, {MonadicityMode::Strict, MonadicityMode::NonStrict}))
        check("forgetful_creation", where + " " + to_string(a.mode), [&] {
            count("audit_items", a.passed + a.failed);
            return a.verdict == Verdict::Monadic && a.failed == 0 && a.discrepancies.empty() && a.extension_ok &&
                   a.retraction_ok;
        });
    check("duality", where + " u_T", [&] {
        return decide_monadicity(opposite(j), opposite(algcat.u), MonadicityMode::Strict, true).verdict ==
               decide_monadicity(j, algcat.u, MonadicityMode::Strict).verdict;
    });
    if (is_dense(identity_functor(j.cod)).dense)
        check("monadic_iff_left_adjoint", where, [&] {
            return check_monadic_iff_left_adjoint(j, identity_functor(j.cod), T).holds;
        });
}

void Suite::functor_checks(const std::string& where, const Functor& j, bool dense, const Functor& r)
{
    const auto cls = classify_functor(r);
    const auto audits = creation_audits(j, r, bounds_.family, {MonadicityMode::Strict, MonadicityMode::NonStrict});
    for (const AuditReport& audit : audits) {
        const MonadicityMode mode = audit.mode;
        const std::string at = where + " " + to_string(mode);
        const MonadicityReport dec = decide_monadicity(j, r, mode);
        count(std::string("verdict_") + to_string(dec.verdict));
        if (dec.adjunction) {
            check("resolution", at, [&] {
                return check_relative_adjunction(*dec.adjunction).empty() && check_relative_monad(*dec.monad).empty();
            });
            check("terminal_resolution", at, [&] {
                return dec.comparison->unique && dec.comparison->commutes_with_forgetful && dec.comparison->commutes_with_free;
            });
        }
        if (j.dom->num_objects() == 0)
            check("degenerate_root", at, [&] {
                return dec.monadic() == (mode == MonadicityMode::Strict ? cls.is_iso : cls.is_equivalence);
            });
        check("duality", at, [&] { return decide_monadicity(opposite(j), opposite(r), mode, true).verdict == dec.verdict; });

        count("audit_items", audit.passed + audit.failed);
        if (audit.vacuous) {
            skip("monadicity_theorem", at + ": " + audit.reason);
        } else if (!dense) {
            if (!dec.monadic() && audit.failed == 0) count("density_exhibits");
            if (dec.monadic())
                check("monadicity_theorem", at + " (soundness, non-dense root)", [&] { return audit.discrepancies.empty(); });
            else
                skip("monadicity_theorem", at + ": " + audit.reason);
        } else {
            if (audit.inconclusive) count("audit_inconclusive");
            if (audit.witness_found) count("audit_witnesses");
            check("monadicity_theorem", at, [&] {
                if (!audit.discrepancies.empty()) return false;
                if (dec.monadic()) return audit.failed == 0;
                return audit.witness_found || audit.inconclusive;
            });
        }
        if (dec.monadic()) check("split_retraction", at, [&] { return audit.extension_ok && audit.retraction_ok; });

        if (mode == MonadicityMode::Strict && dec.adjunction) {
            if (dense)
                check("right_morphism", where, [&] {
                    const auto rm = check_right_morphism(*dec.adjunction, dec.comparison->K, dec.algebras->u);
                    return rm.commutes && rm.adjunction && rm.extension && rm.equivalent;
                });
            else
                skip("right_morphism", where + ": root not dense");
        }
    }

    if (cls.conservative) {
        std::size_t n = 0, bad = 0;
        std::string first;
        for_each_case(bounds_.family, r.dom, CreationKind::Colimit, [&](const Case& k) {
            auto up = weighted_colimit(*k.p, *k.f);
            if (!up || !preserves_colimit(r, up->cocone)) return;
            ++n;
            auto cr = check_creation(r, *k.p, *k.f, CreationMode::NonStrict, CreationKind::Colimit, map_cocone(up->cocone, r));
            if (!cr.passed && bad++ == 0) first = k.label;
        });
        count("preserved_colimits", n);
        if (n > 0) check("preservation_conservativity", where + (bad ? " " + first : ""), [&] { return bad == 0; });
    }
}

void Suite::tight_cell_checks(const std::string& where, const Functor& j, const Functor& i, const Functor& r)
{
    // i: D' → D over r: D → E, both j-monadic legs of a commuting triangle.
    // Both modes share the downstairs (co)limits, which only depend on f ; i.
    const std::vector<MonadicityMode> modes{MonadicityMode::Strict, MonadicityMode::NonStrict};
    std::vector<bool> ok(modes.size(), true);
    using Key = std::tuple<const Distributor*, std::vector<ObjId>, std::vector<MorId>>;
    std::map<Key, std::optional<Cocone>> seen;
    auto downstairs = [&](const Case& k, CreationKind kind) -> const std::optional<Cocone>& {
        const Functor fi = compose(*k.f, i);
        Key key{k.p, fi.obj, fi.mor};
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        std::optional<Cocone> c;
        if (kind == CreationKind::Colimit) {
            auto down = weighted_colimit(*k.p, fi);
            if (down && is_j_absolute(j, map_cocone(down->cocone, r)).absolute) c = std::move(down->cocone);
        } else if (auto down = weighted_limit(*k.p, fi)) {
            c = dual_cone(down->cone);
        }
        return seen.emplace(std::move(key), std::move(c)).first->second;
    };
    for (auto kind : {CreationKind::Colimit, CreationKind::Limit}) {
        seen.clear();
        for_each_case(bounds_.family, i.dom, kind, [&](const Case& k) {
            if (std::none_of(ok.begin(), ok.end(), [](bool b) { return b; })) return;
            const auto& down = downstairs(k, kind);
            if (!down) return;
            for (std::size_t m = 0; m < modes.size(); ++m)
                if (ok[m]) ok[m] = check_creation(i, *k.p, *k.f, creation_mode(modes[m]), kind, *down).passed;
        });
    }
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const std::string at = where + " " + to_string(modes[m]);
        check("algebraic_tight_cell", at + " (1)", [&] { return static_cast<bool>(ok[m]); });
        check("algebraic_tight_cell", at + " (2)", [&] {
            const Functor id = identity_functor(i.cod);
            const bool has = find_left_relative_adjoint(id, i).has_value();
            return has == decide_monadicity(id, i, modes[m]).monadic();
        });
    }
}

void Suite::layered_checks(const std::string& where, const Functor& j, const AlgebraCategory& base)
{
    const auto extras = enumerate_relative_monads(base.f);
    count("layered_monads", extras.size());
    std::size_t used = 0;
    for (std::size_t k = 0; k < extras.size() && used < bounds_.max_extra_monads; ++k, ++used) {
        const RelativeMonad& T = extras[k];
        const std::string at = where + " over f_T#" + std::to_string(k);
        const AlgebraCategory algT = build_algebra_category(T);

        check("pasting", at, [&] {
            const auto pr = paste_adjunction(algT.adjunction, base.adjunction, algT.u, PasteDirection::Paste);
            if (!pr.inner_valid || !pr.composite_valid) return false;
            if (pr.right_morphism && !pr.right_morphism->equivalent) return false;
            const auto back = paste_adjunction(pr.composite, base.adjunction, algT.u, PasteDirection::Unpaste);
            return back.inner_valid && back.inner.sharp == algT.adjunction.sharp;
        });
        check("transport", at, [&] {
            const CatPtr& one = terminal_category();
            const CatPtr interval = builtin_category("Interval");
            std::vector<Distributor> grades = enumerate_distributors(one, one, 2);
            for (auto& p : enumerate_distributors(one, interval, 1)) grades.push_back(p);
            for (auto& p : enumerate_distributors(interval, one, 1)) grades.push_back(p);
            const auto tr = transport_algebras(base, T, {one, interval}, grades);
            count("transported_algebras", tr.algebras);
            count("transported_morphisms", tr.morphisms);
            return tr.passed;
        });
        for (auto mode : {MonadicityMode::Strict, MonadicityMode::NonStrict}) {
            check("composite_monadicity", at + " " + to_string(mode), [&] {
                const auto cr = decide_composite_monadicity(j, base.u, algT.u, mode);
                return cr.holds && cr.left.monadic() && cr.right.monadic();
            });
            for (const auto& [name, r] : test_functors(base.cat, 4))
                check("composite_monadicity", at + " " + name + " " + to_string(mode), [&] {
                    return decide_composite_monadicity(j, base.u, r, mode).holds;
                });
        }
        tight_cell_checks(at, j, algT.u, base.u);
    }
}

void Suite::cancellability_checks(const std::string& where, const AlgebraCategory& base)
{
    // Ordinary case: r' = u_T' over 1_E; candidates r into D = Alg(T').
    const CatPtr& D = base.cat;
    const Functor idD = identity_functor(D);
    const Functor idE = identity_functor(base.T.j.cod);
    std::vector<std::pair<std::string, Functor>> cands = test_functors(D, bounds_.max_test_functors);
    const auto ordinary = enumerate_relative_monads(idD);
    for (std::size_t k = 0; k < ordinary.size() && k < bounds_.max_extra_monads; ++k)
        cands.emplace_back("u_S#" + std::to_string(k), build_algebra_category(ordinary[k]).u);
    for (const auto& [name, r] : cands) {
        if (!find_left_relative_adjoint(idD, r)) continue;
        for (auto mode : {MonadicityMode::Strict, MonadicityMode::NonStrict}) {
            if (!decide_monadicity(idE, compose(r, base.u), mode).monadic()) {
                skip("cancellability", where + " " + name + " " + to_string(mode) + ": r;r' not monadic");
                continue;
            }
            check("cancellability", where + " " + name + " " + to_string(mode),
                  [&] { return decide_monadicity(idD, r, mode).monadic(); });
        }
    }
}

void Suite::run(const Instance& inst)
{
    if (!inst.functors.count("j")) {
        skip("resolution", inst.name + ": no root");
        return;
    }
    const Functor& j = inst.functors.at("j");
    const CatPtr& E = j.cod;
    const bool dense = is_dense(j).dense;
    count(dense ? "dense_roots" : "non_dense_roots");

    std::vector<std::pair<std::string, RelativeMonad>> monads;
    for (const auto& [role, T] : inst.monads)
        if (T.j == j) monads.emplace_back(role, T);
    {
        const auto all = enumerate_relative_monads(j);
        count("enumerated_monads", all.size());
        std::size_t added = 0;
        for (std::size_t k = 0; k < all.size() && added < bounds_.max_monads; ++k) {
            bool seen = false;
            for (const auto& m : monads) seen = seen || m.second == all[k];
            if (seen) continue;
            monads.emplace_back("enum#" + std::to_string(k), all[k]);
            ++added;
        }
    }

    std::vector<AlgebraCategory> algcats;
    for (const auto& [role, T] : monads) {
        algcats.push_back(build_algebra_category(T));
        monad_checks(inst.name + " " + role, j, T, algcats.back());
    }

    std::vector<std::pair<std::string, Functor>> rs;
    for (const auto& [role, f] : inst.functors)
        if (!role.empty() && role[0] == 'r' && same_category(f.cod, E)) rs.emplace_back(role, f);
    for (auto& g : test_functors(E, bounds_.max_test_functors)) rs.push_back(std::move(g));
    for (const auto& [name, r] : rs) functor_checks(inst.name + " " + name, j, dense, r);

    // Layered constructions over the first few algebra categories.
    for (std::size_t k = 0; k < algcats.size() && k < 2; ++k) {
        const std::string at = inst.name + " " + monads[k].first;
        layered_checks(at, j, algcats[k]);
        if (j == identity_functor(E)) cancellability_checks(at, algcats[k]);
    }
    // Triangles between algebra categories of two monads on the same root.
    for (std::size_t a = 0; a < algcats.size() && a < 3; ++a)
        for (std::size_t b = 0; b < algcats.size() && b < 3; ++b) {
            const auto& A1 = algcats[a];
            const auto& A2 = algcats[b];
            const auto is = enumerate_functors_where(
                A1.cat, A2.cat, [&](ObjId x, ObjId y) { return A2.u(y) == A1.u(x); },
                [&](MorId h, MorId k) { return A2.u.map(k) == A1.u.map(h); }, 2);
            for (std::size_t t = 0; t < is.size(); ++t)
                tight_cell_checks(inst.name + " " + monads[a].first + "->" + monads[b].first + "#" + std::to_string(t), j,
                                  is[t], A2.u);
        }
}

} // namespace

SuiteReport run_theorem_suite(const std::vector<Instance>& instances, const SuiteBounds& bounds)
{
    SuiteReport rep;
    for (const auto& t : kTheorems) rep.row(t);
    Suite suite(rep, bounds);
    for (const auto& inst : instances) {
        auto v = check_instance(inst);
        if (!v.empty()) {
            rep.invalid_instances.push_back(inst.name + ": " + v.front().to_string());
            continue;
        }
        ++rep.census["instances"];
        suite.run(inst);
    }
    rep.passed = true;
    for (const auto& r : rep.rows) rep.passed = rep.passed && r.failed == 0;
    return rep;
}

} // namespace relmon
