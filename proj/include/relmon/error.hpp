#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relmon {

/// A single law or well-formedness failure, located by the names involved.
struct Violation {
    std::string kind;
    std::vector<std::string> witness;
    std::string message;

    std::string to_string() const;
};

/// Raised by the validators; carries every violation that was found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    const Violation& first() const { return violations_.front(); }

private:
    std::vector<Violation> violations_;
};

/// Structural problems in input documents (bad JSON shape, bad keys).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string location, const std::string& message);

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration visits more search nodes than the active budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string what_enumeration, std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t limit_;
};

/// Precondition failures between otherwise valid objects (mismatched endpoints etc.).
class ContractError : public std::runtime_error {
public:
    ContractError(std::string kind, const std::string& message);

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Node limit for a single enumeration. Resolution order: innermost ScopedBudget,
/// then the RELMON_BUDGET environment variable, then the built-in default.
std::uint64_t enumeration_budget();

class ScopedBudget {
public:
    explicit ScopedBudget(std::uint64_t limit);
    ~ScopedBudget();
    ScopedBudget(const ScopedBudget&) = delete;
    ScopedBudget& operator=(const ScopedBudget&) = delete;

private:
    std::uint64_t previous_;
};

} // namespace relmon
