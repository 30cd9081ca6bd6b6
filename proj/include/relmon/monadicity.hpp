#pragma once

#include "relmon/alg.hpp"
#include "relmon/corpus.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relmon {

enum class MonadicityMode { Strict, NonStrict };
enum class Verdict { Monadic, NotMonadic, NoAdjoint };

std::string to_string(MonadicityMode m);
std::string to_string(Verdict v);
CreationMode creation_mode(MonadicityMode m);

/// Pipeline result: left adjoint, induced monad, Alg(T), comparison K and its
/// classification. Strict verdicts follow K.is_iso, non-strict ones K.is_equivalence.
struct MonadicityReport {
    MonadicityMode mode = MonadicityMode::Strict;
    bool co = false;
    std::optional<RelativeAdjunction> adjunction;
    std::optional<RelativeMonad> monad;
    std::optional<AlgebraCategory> algebras;
    std::optional<ComparisonData> comparison;
    FunctorClassification classification;
    Verdict verdict = Verdict::NoAdjoint;
    std::vector<Violation> witnesses;

    bool monadic() const { return verdict == Verdict::Monadic; }
};

/// co = true decides comonadicity by running the same pipeline on the opposites.
MonadicityReport decide_monadicity(const Functor& j, const Functor& r, MonadicityMode mode, bool co = false);

// ---------------------------------------------------------------------------

/// Weights p: X ⇸ Y with X, Y drawn from `shapes` and components of size ≤ element_cap.
struct ShapeFamily {
    std::vector<std::string> names;
    std::vector<CatPtr> shapes;
    int element_cap = 2;
};

/// The curated shapes with at most `max_morphisms` morphisms (≤ 2 objects each).
ShapeFamily shape_family(int max_morphisms = 6, int element_cap = 2);

struct AuditItem {
    std::string kind;  // colimit | limit | extension | identity_extension | retraction
    std::string label;
    bool absolute = false;
    bool passed = false;
    std::string note;
    std::vector<Violation> violations;
};

/// Creation audit against the comparison verdict. Only failing and targeted
/// items are kept; everything else is tallied in the census.
struct AuditReport {
    MonadicityMode mode = MonadicityMode::Strict;
    Verdict verdict = Verdict::NoAdjoint;
    bool vacuous = false;
    bool dense = false;
    std::string reason;
    std::map<std::string, std::size_t> census;
    std::vector<AuditItem> items;
    std::size_t passed = 0;
    std::size_t failed = 0;
    bool extension_ok = false;  // K ▷ r exists with apex u_T and is created
    bool retraction_ok = false; // K ; (K ▷ 1) = 1
    bool witness_found = false; // a failure that survived re-verification
    bool inconclusive = false;  // negative verdict, no failure within the bound
    std::vector<Violation> discrepancies;
};

AuditReport creation_audit(const Functor& j, const Functor& r, const ShapeFamily& family, MonadicityMode mode);
/// One report per mode; the downstairs colimits are computed once for all of them.
std::vector<AuditReport> creation_audits(const Functor& j, const Functor& r, const ShapeFamily& family,
                                         const std::vector<MonadicityMode>& modes);

// ---------------------------------------------------------------------------

struct CompositeReport {
    MonadicityMode mode = MonadicityMode::Strict;
    RelativeAdjunction outer; // ℓ' ⊣_j r'
    MonadicityReport left;    // r against ℓ'
    MonadicityReport right;   // r ; r' against j
    bool holds = false;
};

/// Throws ContractError("PremiseFail") unless r' is j-monadic in this mode, and
/// ContractError("TheoremViolation") if the biconditional fails.
CompositeReport decide_composite_monadicity(const Functor& j, const Functor& rprime, const Functor& r, MonadicityMode mode);

struct LeftAdjointCriterionReport {
    bool has_adjoint = false;
    MonadicityReport monadicity;
    bool holds = false;
};

/// T is a (j ; j')-monad; u_T is tested for a left j'-adjoint and for
/// j'-monadicity. Throws ContractError("Inapplicable") unless j' is dense.
LeftAdjointCriterionReport check_monadic_iff_left_adjoint(const Functor& j, const Functor& jprime, const RelativeMonad& T,
                                                          MonadicityMode mode = MonadicityMode::Strict);

// ---------------------------------------------------------------------------

struct SuiteBounds {
    ShapeFamily family = shape_family();
    AlgebraObjectBounds algebra_object = default_algebra_object_bounds();
    std::size_t max_monads = 6;         // per root, after the instance's own
    std::size_t max_extra_monads = 3;   // f_T-monads per base T
    std::size_t max_test_functors = 8;  // generated test functors r per root
};

struct TheoremRow {
    std::string theorem;
    std::size_t checked = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

struct SuiteReport {
    std::vector<TheoremRow> rows;
    std::vector<std::string> invalid_instances;
    std::map<std::string, std::size_t> census;
    bool passed = false;

    TheoremRow& row(const std::string& name);
    const TheoremRow* find(const std::string& name) const;
};

SuiteReport run_theorem_suite(const std::vector<Instance>& instances, const SuiteBounds& bounds = {});

} // namespace relmon
