#pragma once

#include "relmon/fincat.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace relmon {

/// Copy-on-write table. Distributors are copied into every cocone and
/// context, so the tables are shared until someone writes to them.
template <class T>
class Shared {
public:
    Shared() = default;
    Shared(T value) : p_(std::make_shared<T>(std::move(value))) {}

    const T& operator*() const { return p_ ? *p_ : empty(); }
    const T* operator->() const { return &**this; }
    operator const T&() const { return **this; }

    T& mut()
    {
        if (!p_) p_ = std::make_shared<T>();
        else if (p_.use_count() > 1) p_ = std::make_shared<T>(*p_);
        return *p_;
    }

    std::size_t size() const { return (**this).size(); }
    const auto& operator[](std::size_t i) const { return (**this)[i]; }
    auto& operator[](std::size_t i) { return mut()[i]; }
    void assign(std::size_t n, const typename T::value_type& v) { mut().assign(n, v); }
    auto begin() const { return (**this).begin(); }
    auto end() const { return (**this).end(); }

    friend bool operator==(const Shared& a, const Shared& b) { return a.p_ == b.p_ || *a == *b; }

private:
    static const T& empty()
    {
        static const T e{};
        return e;
    }
    std::shared_ptr<T> p_;
};

/// A finite Set-valued distributor p: X ⇸ Y with components p(y, x),
/// contravariant in y ∈ Y = tgt and covariant in x ∈ X = src.
///
/// Elements are addressed by their index inside the component. For m: y'→y
/// in Y, pull(m, x, u) = m·u ∈ p(y', x); for n: x→x' in X,
/// push(n, y, u) = u·n ∈ p(y, x').
struct Distributor {
    CatPtr src; // X
    CatPtr tgt; // Y
    Shared<std::vector<std::vector<std::string>>> names; // [y * |X| + x]
    Shared<std::vector<std::vector<int>>> pull_table;    // [m * |X| + x][u], m in Y
    Shared<std::vector<std::vector<int>>> push_table;    // [n * |Y| + y][u], n in X

    int nx() const { return src->num_objects(); }
    int ny() const { return tgt->num_objects(); }
    int size(ObjId y, ObjId x) const { return static_cast<int>((*names)[y * nx() + x].size()); }
    const std::string& name(ObjId y, ObjId x, int u) const { return (*names)[y * nx() + x][u]; }
    int pull(MorId m, ObjId x, int u) const { return (*pull_table)[m * nx() + x][u]; }
    int push(MorId n, ObjId y, int u) const { return (*push_table)[n * ny() + y][u]; }
    std::size_t total_elements() const;
};

bool operator==(const Distributor& a, const Distributor& b);

/// Raw form, keyed by names. Action keys follow the file format: the
/// right action "m|y|x|elem" has y = cod m; the left action "n|y|x|elem" has
/// x = dom n.
struct DistributorDescription {
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> elements; // (y, x)
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::string> right_action;
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::string> left_action;
};

std::vector<Violation> check_distributor(const Distributor& p);
Distributor validate_distributor(const DistributorDescription& raw, const CatPtr& src, const CatPtr& tgt);
DistributorDescription describe(const Distributor& p);

/// C(y, x) with composition as both actions.
Distributor hom_distributor(const CatPtr& c);

/// p(f y', g x') for f: Y' → Y and g: X' → X.
Distributor restrict_distributor(const Distributor& p, const Functor& f, const Functor& g);

/// The same data seen as p°: Y^op ⇸ X^op, with p°(x, y) = p(y, x).
Distributor dual(const Distributor& p);

/// Distributor with a one-element component everywhere, X ⇸ Terminal style
/// weights for conical shapes. Only defined when both categories are given.
Distributor terminal_distributor(const CatPtr& src, const CatPtr& tgt);

/// All distributors X ⇸ Y with at most `cap` elements per component, up to
/// renaming of elements inside components. Element names are "0", "1", ...
std::vector<Distributor> enumerate_distributors(const CatPtr& src, const CatPtr& tgt, int cap);

// ---------------------------------------------------------------------------
// Tensor quotient

/// ∐_y q(a, y) × p(y, x) modulo (v·m, u) ~ (v, m·u), for q: Y ⇸ A and p: X ⇸ Y
/// at fixed a and x. Classes are labelled by their least member.
struct TensorSet {
    struct Member {
        ObjId y;
        int v; // in q(a, y)
        int u; // in p(y, x)
    };
    std::vector<Member> members;
    std::vector<int> cls; // member -> index of least member of its class
    int num_classes = 0;
};

TensorSet tensor_set(const Distributor& q, const Distributor& p, ObjId a, ObjId x);

// ---------------------------------------------------------------------------
// Graded cells

/// A 2-cell p_1, …, p_n ⇒ q, with p_i: X_i ⇸ X_{i-1} (components p_i(x_{i-1}, x_i))
/// and q: X_n ⇸ X_0. For n = 0 the cell is a family q(x, x) natural in x.
struct GradedCell {
    std::vector<Distributor> chain;
    Distributor target;
    /// key: x_0 … x_n followed by u_1 … u_n; value: element of q(x_0, x_n)
    std::map<std::vector<int>, int> components;

    int at(const std::vector<int>& key) const { return components.at(key); }
};

/// Every natural family, in canonical order. The target is restricted along
/// (f0, fn) first, so q may live over other categories. Supports n ≤ 2.
std::vector<GradedCell> enumerate_graded_cells(const std::vector<Distributor>& chain, const Functor& f0,
                                               const Functor& fn, const Distributor& q, int max_n = 2);

/// Same, with the target already over X_0 and X_n.
std::vector<GradedCell> enumerate_graded_cells(const std::vector<Distributor>& chain, const Distributor& q,
                                               int max_n = 2);

/// All index tuples (x_0 … x_n, u_1 … u_n) of a chain, in canonical order.
/// For an empty chain over X, the keys are the single objects of X.
std::vector<std::vector<int>> chain_keys(const std::vector<Distributor>& chain, const CatPtr& base);

} // namespace relmon
