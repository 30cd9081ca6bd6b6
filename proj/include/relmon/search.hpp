#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace relmon {

/// Finite-domain backtracking search.
///
/// Variables are assigned in index order, each ranging over its domain in the
/// order given. A constraint fires as soon as the highest-indexed variable of
/// its scope is assigned; it sees the partial assignment (unassigned = -1).
/// Solutions are therefore produced in lexicographic order of
/// (variable index, domain position), which is what makes every enumeration in
/// the engine reproducible.
class Search {
public:
    using Assignment = std::span<const int>;
    using Predicate = std::function<bool(Assignment)>;
    using Visitor = std::function<bool(Assignment)>; // return false to stop

    explicit Search(std::string label = "search") : label_(std::move(label)) {}

    int add_variable(std::vector<int> domain);
    void add_constraint(std::vector<int> scope, Predicate pred);

    std::size_t num_variables() const noexcept { return domains_.size(); }

    /// Visits every solution; returns false if the visitor stopped early.
    /// Charges one budget unit per search node and throws BudgetExceeded.
    bool for_each(const Visitor& visit) const;

    std::size_t count(std::size_t stop_after = static_cast<std::size_t>(-1)) const;

    /// All solutions as value vectors.
    std::vector<std::vector<int>> solutions(std::size_t stop_after = static_cast<std::size_t>(-1)) const;

private:
    std::string label_;
    std::vector<std::vector<int>> domains_;
    std::vector<Predicate> constraints_;
    std::vector<std::vector<int>> triggers_; // var -> constraints firing at it
    std::vector<int> initial_; // constraints with empty scope
};

} // namespace relmon
