#include "relmon/reladj.hpp"

#include <set>

namespace relmon {

namespace {

Violation violation(std::string kind, std::vector<std::string> witness, std::string message = {})
{
    return Violation{std::move(kind), std::move(witness), std::move(message)};
}

bool in_hom(const FinCategory& C, MorId f, ObjId x, ObjId y)
{
    return f >= 0 && f < C.num_morphisms() && C.dom(f) == x && C.cod(f) == y;
}

} // namespace

RelativeAdjunction assemble_adjunction(Functor j, Functor l, Functor r, std::vector<std::vector<MorId>> sharp)
{
    RelativeAdjunction adj{std::move(j), std::move(l), std::move(r), std::move(sharp), {}};
    const auto& E = *adj.j.cod;
    const int na = adj.j.dom->num_objects(), nc = adj.nc();
    adj.flat.assign(static_cast<std::size_t>(na) * nc, {});
    if (adj.sharp.size() != adj.flat.size()) return adj;
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c) {
            auto& fl = adj.flat[a * nc + c];
            const ObjId ja = adj.j(a), rc = adj.r(c);
            fl.assign(E.hom(ja, rc).size(), -1);
            const auto ks = adj.l.cod->hom(adj.l(a), c);
            const auto& row = adj.sharp[a * nc + c];
            for (std::size_t i = 0; i < row.size() && i < ks.size(); ++i) {
                if (!in_hom(E, row[i], ja, rc)) continue;
                auto& slot = fl[E.hom_index(row[i])];
                if (slot < 0) slot = ks[i];
            }
        }
    return adj;
}

std::vector<Violation> check_relative_adjunction(const RelativeAdjunction& adj)
{
    std::vector<Violation> out;
    const auto& j = adj.j;
    const auto& l = adj.l;
    const auto& r = adj.r;
    if (!same_category(j.dom, l.dom) || !same_category(l.cod, r.dom) || !same_category(j.cod, r.cod)) {
        out.push_back(violation("EndpointMismatch", {}, "j, l and r do not form a triangle"));
        return out;
    }
    const auto& A = *j.dom;
    const auto& C = *l.cod;
    const auto& E = *j.cod;
    const int na = A.num_objects(), nc = C.num_objects();
    if (static_cast<int>(adj.sharp.size()) != na * nc) {
        out.push_back(violation("NotTotal", {}, "sharp table has the wrong shape"));
        return out;
    }
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c) {
            const auto ks = C.hom(l(a), c);
            const auto& row = adj.sharp[a * nc + c];
            bool total = row.size() == ks.size();
            for (MorId f : row) total = total && in_hom(E, f, j(a), r(c));
            if (!total) {
                out.push_back(violation("NotTotal", {A.object_name(a), C.object_name(c)}));
                continue;
            }
            std::set<MorId> image(row.begin(), row.end());
            if (image.size() != row.size() || row.size() != E.hom(j(a), r(c)).size())
                out.push_back(violation("NotBijective", {A.object_name(a), C.object_name(c)}));
        }
    if (!out.empty()) return out;
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c)
            for (MorId k : C.hom(l(a), c))
                for (int m = 0; m < C.num_morphisms(); ++m) {
                    if (C.dom(m) != c) continue;
                    if (adj.sharp_of(a, C.compose(k, m)) != E.compose(adj.sharp_of(a, k), r.map(m)))
                        out.push_back(violation("NaturalityFail", {"c", C.morphism_name(k), C.morphism_name(m)}));
                }
    for (int h = 0; h < A.num_morphisms(); ++h) {
        const ObjId a2 = A.dom(h), a = A.cod(h);
        for (int c = 0; c < nc; ++c)
            for (MorId k : C.hom(l(a), c))
                if (adj.sharp_of(a2, C.compose(l.map(h), k)) != E.compose(j.map(h), adj.sharp_of(a, k)))
                    out.push_back(violation("NaturalityFail", {"a", A.morphism_name(h), C.morphism_name(k)}));
    }
    return out;
}

RelativeAdjunction validate_relative_adjunction(const Functor& j, const Functor& l, const Functor& r,
                                                const AdjunctionDescription& raw)
{
    std::vector<Violation> out;
    if (!same_category(j.dom, l.dom) || !same_category(l.cod, r.dom) || !same_category(j.cod, r.cod))
        throw ValidationError({violation("EndpointMismatch", {}, "j, l and r do not form a triangle")});
    const auto& A = *j.dom;
    const auto& C = *l.cod;
    const auto& E = *j.cod;
    const int na = A.num_objects(), nc = C.num_objects();
    std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(na) * nc);
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c) sharp[a * nc + c].assign(C.hom(l(a), c).size(), -1);
    for (const auto& [key, fname] : raw.sharp) {
        const auto& [an, cn, kn] = key;
        auto a = A.find_object(an);
        auto c = C.find_object(cn);
        auto k = C.find_morphism(kn);
        auto f = E.find_morphism(fname);
        if (!a || !c || !k || !f || !in_hom(C, *k, l(*a), *c)) {
            out.push_back(violation("DanglingReference", {an, cn, kn, fname}, "bad sharp entry"));
            continue;
        }
        sharp[*a * nc + *c][C.hom_index(*k)] = *f;
    }
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c)
            for (std::size_t i = 0; i < sharp[a * nc + c].size(); ++i)
                if (sharp[a * nc + c][i] < 0)
                    out.push_back(violation("NotTotal", {A.object_name(a), C.object_name(c), C.morphism_name(C.hom(l(a), c)[i])}));
    if (!out.empty()) throw ValidationError(std::move(out));
    auto adj = assemble_adjunction(j, l, r, std::move(sharp));
    out = check_relative_adjunction(adj);
    if (!out.empty()) throw ValidationError(std::move(out));
    return adj;
}

AdjunctionDescription describe(const RelativeAdjunction& adj)
{
    AdjunctionDescription d;
    const auto& A = *adj.j.dom;
    const auto& C = *adj.l.cod;
    const auto& E = *adj.j.cod;
    for (int a = 0; a < A.num_objects(); ++a)
        for (int c = 0; c < C.num_objects(); ++c)
            for (MorId k : C.hom(adj.l(a), c))
                d.sharp[{A.object_name(a), C.object_name(c), C.morphism_name(k)}] = E.morphism_name(adj.sharp_of(a, k));
    return d;
}

RelativeAdjunction identity_adjunction(const CatPtr& e)
{
    const auto id = identity_functor(e);
    const int n = e->num_objects();
    std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            auto h = e->hom(a, c);
            sharp[a * n + c].assign(h.begin(), h.end());
        }
    return assemble_adjunction(id, id, id, std::move(sharp));
}

std::optional<RelativeAdjunction> find_left_relative_adjoint(const Functor& j, const Functor& r, bool reverse_order)
{
    if (!same_category(j.cod, r.cod)) throw ContractError("EndpointMismatch", "j and r have different codomains");
    const auto& A = *j.dom;
    const auto& C = *r.dom;
    const auto& E = *j.cod;
    const int na = A.num_objects(), nc = C.num_objects();
    Functor l{j.dom, r.dom, std::vector<ObjId>(na, -1), std::vector<MorId>(A.num_morphisms(), -1)};
    std::vector<MorId> unit(na, -1);

    auto represents = [&](ObjId a, ObjId x, MorId u) {
        for (int c = 0; c < nc; ++c) {
            const auto ms = C.hom(x, c);
            if (ms.size() != E.hom(j(a), r(c)).size()) return false;
            std::set<MorId> image;
            for (MorId m : ms) image.insert(E.compose(u, r.map(m)));
            if (image.size() != ms.size()) return false;
        }
        return true;
    };
    for (int a = 0; a < na; ++a) {
        for (int i = 0; i < nc && l.obj[a] < 0; ++i) {
            const ObjId x = reverse_order ? nc - 1 - i : i;
            auto us = E.hom(j(a), r(x));
            for (std::size_t t = 0; t < us.size(); ++t) {
                const MorId u = reverse_order ? us[us.size() - 1 - t] : us[t];
                if (represents(a, x, u)) {
                    l.obj[a] = x;
                    unit[a] = u;
                    break;
                }
            }
        }
        if (l.obj[a] < 0) return std::nullopt;
    }
    // ℓ(h) is the unique m with u_a ; r m = j h ; u_a2.
    for (int h = 0; h < A.num_morphisms(); ++h) {
        const ObjId a = A.dom(h), a2 = A.cod(h);
        const MorId target = E.compose(j.map(h), unit[a2]);
        for (MorId m : C.hom(l(a), l(a2)))
            if (E.compose(unit[a], r.map(m)) == target) {
                l.mor[h] = m;
                break;
            }
        if (l.mor[h] < 0) throw ContractError("EngineBug", "representing data does not determine the left adjoint");
    }
    std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(na) * nc);
    for (int a = 0; a < na; ++a)
        for (int c = 0; c < nc; ++c)
            for (MorId k : C.hom(l(a), c)) sharp[a * nc + c].push_back(E.compose(unit[a], r.map(k)));
    auto adj = assemble_adjunction(j, checked(std::move(l)), r, std::move(sharp));
    auto v = check_relative_adjunction(adj);
    if (!v.empty()) throw ContractError("EngineBug", "found adjunction does not validate: " + v.front().to_string());
    return adj;
}

std::optional<NatTrans> compare_left_adjoints(const RelativeAdjunction& a, const RelativeAdjunction& b)
{
    return find_natural_isomorphism(a.l, b.l);
}

// ---------------------------------------------------------------------------

Cocone extension_cocone(const Functor& c, const Functor& r, const Functor& r_prime)
{
    const Distributor w = extension_weight(c);
    const auto& D = *c.dom;
    const auto& C2 = *c.cod;
    const int nx = C2.num_objects();
    Cocone out{w, r, r_prime, LegTable(static_cast<std::size_t>(D.num_objects()) * nx)};
    for (int d = 0; d < D.num_objects(); ++d)
        for (int x = 0; x < nx; ++x)
            for (MorId u : C2.hom(c(d), x)) out.legs[d * nx + x].push_back(r_prime.map(u));
    return out;
}

RightMorphismReport check_right_morphism(const RelativeAdjunction& adj, const Functor& c, const Functor& r_prime)
{
    RightMorphismReport rep;
    if (!same_category(c.dom, adj.r.dom) || !same_category(c.cod, r_prime.dom) || !same_category(r_prime.cod, adj.r.cod))
        throw ContractError("EndpointMismatch", "c and r' do not fit the adjunction");
    rep.commutes = compose(c, r_prime) == adj.r;
    if (!rep.commutes) {
        rep.violations.push_back(violation("NotCommuting", {}, "c ; r' differs from r"));
        return rep;
    }
    const auto& A = *adj.j.dom;
    const auto& C2 = *c.cod;
    const auto& E = *adj.j.cod;
    const Functor l2 = compose(adj.l, c);
    rep.adjunction = true;
    for (int a = 0; a < A.num_objects() && rep.adjunction; ++a) {
        const MorId eta = adj.unit(a);
        for (int x = 0; x < C2.num_objects() && rep.adjunction; ++x) {
            std::set<MorId> image;
            for (MorId k : C2.hom(l2(a), x)) image.insert(E.compose(eta, r_prime.map(k)));
            rep.adjunction = image.size() == C2.hom(l2(a), x).size() && image.size() == E.hom(adj.j(a), r_prime(x)).size();
            if (!rep.adjunction) rep.violations.push_back(violation("NotBijective", {A.object_name(a), C2.object_name(x)}));
        }
    }
    const Cocone cocone = extension_cocone(c, adj.r, r_prime);
    ColimitContext ctx(cocone.weight, cocone.diagram);
    rep.colimiting = check_cocone(cocone).empty() && ctx.is_colimiting(cocone);
    rep.absolute = rep.colimiting && is_j_absolute(adj.j, cocone).absolute;
    rep.extension = rep.colimiting && rep.absolute;
    rep.equivalent = rep.adjunction == rep.extension;
    return rep;
}

// ---------------------------------------------------------------------------

PastingReport paste_adjunction(const RelativeAdjunction& given, const RelativeAdjunction& outer, const Functor& r,
                               PasteDirection direction)
{
    PastingReport rep;
    rep.direction = direction;
    rep.outer = outer;
    if (!check_relative_adjunction(outer).empty())
        throw ContractError("PremiseFail", "the outer triangle is not a relative adjunction");
    const auto& E = *outer.j.cod;

    if (direction == PasteDirection::Paste) {
        if (!(given.j == outer.l) || !same_category(given.r.cod, outer.r.dom))
            throw ContractError("EndpointMismatch", "inner root must be the outer left adjoint");
        rep.inner = given;
        const auto& C = *given.r.dom;
        const auto& D = *outer.r.dom;
        const int na = given.j.dom->num_objects(), nc = C.num_objects();
        std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(na) * nc);
        for (int a = 0; a < na; ++a)
            for (int c = 0; c < nc; ++c)
                for (std::size_t i = 0; i < given.sharp[a * nc + c].size(); ++i) {
                    const MorId m = given.sharp[a * nc + c][i];
                    sharp[a * nc + c].push_back(in_hom(D, m, outer.l(a), given.r(c)) ? outer.sharp_of(a, m) : -1);
                }
        rep.composite = assemble_adjunction(outer.j, given.l, compose(given.r, outer.r), std::move(sharp));
    } else {
        if (!(given.j == outer.j) || !(given.r == compose(r, outer.r)))
            throw ContractError("EndpointMismatch", "composite right adjoint must be r ; r'");
        rep.composite = given;
        const auto& C = *r.dom;
        const int na = given.j.dom->num_objects(), nc = C.num_objects();
        std::vector<std::vector<MorId>> sharp(static_cast<std::size_t>(na) * nc);
        for (int a = 0; a < na; ++a)
            for (int c = 0; c < nc; ++c)
                for (MorId f : given.sharp[a * nc + c])
                    sharp[a * nc + c].push_back(in_hom(E, f, outer.j(a), outer.r(r(c))) ? outer.flat_of(a, r(c), f) : -1);
        rep.inner = assemble_adjunction(outer.l, given.l, r, std::move(sharp));
    }
    auto vi = check_relative_adjunction(rep.inner);
    auto vc = check_relative_adjunction(rep.composite);
    rep.inner_valid = vi.empty();
    rep.composite_valid = vc.empty();
    rep.violations = rep.inner_valid ? vc : vi;
    if (rep.inner_valid != rep.composite_valid)
        throw ContractError("ValidationFail", "pasting changed validity of a relative adjunction");
    if (rep.composite_valid && is_dense(outer.j).dense)
        rep.right_morphism = check_right_morphism(rep.composite, rep.inner.r, outer.r);
    return rep;
}

} // namespace relmon
