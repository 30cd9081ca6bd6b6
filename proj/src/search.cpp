#include "relmon/search.hpp"

#include "relmon/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace relmon {

namespace {

constexpr std::uint64_t kDefaultBudget = 50'000'000;
thread_local std::uint64_t scoped_budget = 0;

} // namespace

std::string Violation::to_string() const
{
    std::string out = kind + "(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) out += ", ";
        out += witness[i];
    }
    out += ")";
    if (!message.empty()) out += ": " + message;
    return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(violations.empty() ? std::string("validation failed")
                                            : violations.front().to_string()),
      violations_(std::move(violations))
{
}

ParseError::ParseError(std::string location, const std::string& message)
    : std::runtime_error("ParseError at " + location + ": " + message), location_(std::move(location))
{
}

BudgetExceeded::BudgetExceeded(std::string what_enumeration, std::uint64_t limit)
    : std::runtime_error("BudgetExceeded: " + what_enumeration + " exceeded " + std::to_string(limit)
                         + " search nodes"),
      limit_(limit)
{
}

ContractError::ContractError(std::string kind, const std::string& message)
    : std::runtime_error(kind + ": " + message), kind_(std::move(kind))
{
}

std::uint64_t enumeration_budget()
{
    if (scoped_budget != 0) return scoped_budget;
    if (const char* env = std::getenv("RELMON_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return kDefaultBudget;
}

ScopedBudget::ScopedBudget(std::uint64_t limit) : previous_(scoped_budget) { scoped_budget = limit; }

ScopedBudget::~ScopedBudget() { scoped_budget = previous_; }

int Search::add_variable(std::vector<int> domain)
{
    domains_.push_back(std::move(domain));
    triggers_.emplace_back();
    return static_cast<int>(domains_.size()) - 1;
}

void Search::add_constraint(std::vector<int> scope, Predicate pred)
{
    const int id = static_cast<int>(constraints_.size());
    constraints_.push_back(std::move(pred));
    if (scope.empty()) {
        initial_.push_back(id);
        return;
    }
    const int last = *std::max_element(scope.begin(), scope.end());
    triggers_.at(static_cast<std::size_t>(last)).push_back(id);
}

bool Search::for_each(const Visitor& visit) const
{
    const std::uint64_t limit = enumeration_budget();
    std::uint64_t nodes = 0;
    std::vector<int> values(domains_.size(), -1);
    const Assignment view(values);

    for (int c : initial_) {
        if (!constraints_[c](view)) return true;
    }
    const std::size_t n = domains_.size();
    if (n == 0) return visit(view);

    // Iterative DFS; position[i] is the index into domains_[i] currently tried.
    std::vector<std::size_t> position(n, 0);
    std::size_t depth = 0;
    while (true) {
        if (position[depth] >= domains_[depth].size()) {
            values[depth] = -1;
            position[depth] = 0;
            if (depth == 0) return true;
            --depth;
            ++position[depth];
            continue;
        }
        if (++nodes > limit) throw BudgetExceeded(label_, limit);
        values[depth] = domains_[depth][position[depth]];
        bool ok = true;
        for (int c : triggers_[depth]) {
            if (!constraints_[c](view)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++position[depth];
            continue;
        }
        if (depth + 1 == n) {
            if (!visit(view)) return false;
            ++position[depth];
            continue;
        }
        ++depth;
    }
}

std::size_t Search::count(std::size_t stop_after) const
{
    std::size_t total = 0;
    for_each([&](Assignment) { return ++total < stop_after; });
    return total;
}

std::vector<std::vector<int>> Search::solutions(std::size_t stop_after) const
{
    std::vector<std::vector<int>> out;
    for_each([&](Assignment a) {
        out.emplace_back(a.begin(), a.end());
        return out.size() < stop_after;
    });
    return out;
}

} // namespace relmon
