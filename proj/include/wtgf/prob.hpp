#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtgf/errors.hpp"

namespace wtgf::prob {

/// Finite ordered alphabet with unique symbol labels. A size-1 alphabet
/// represents a degenerate (always-constant) variable.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    static Alphabet binary() { return Alphabet({"0", "1"}); }
    static Alphabet degenerate() { return Alphabet({"-"}); }
    /// Symbols "<prefix>0", ..., "<prefix>{n-1}".
    static Alphabet indexed(std::string_view prefix, std::size_t n);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(std::size_t i) const { return symbols_[i]; }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> symbols_;
};

/// Named variable over a finite alphabet.
struct Var {
    std::string name;
    Alphabet alphabet;

    bool operator==(const Var&) const = default;
};

/// Row-major strides over a list of axis sizes.
struct Layout {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> strides;
    std::size_t total = 1;

    Layout() = default;
    explicit Layout(std::vector<std::size_t> axis_sizes);

    std::size_t index(std::span<const std::size_t> digits) const;
    void digits_of(std::size_t index, std::span<std::size_t> out) const;
};

using Names = std::vector<std::string>;

/// Normalized joint probability mass over an ordered tuple of named finite
/// variables. The tensor is stored flat, row-major lexicographic by variable
/// declaration order (this ordering is part of the file-format contract).
/// Immutable after construction.
class JointPmf {
public:
    static constexpr double kDefaultTol = 1e-9;

    /// Entries must be nonnegative and sum to 1 within `tol`; the mass is
    /// renormalized when the deviation is below tolerance and rejected above.
    JointPmf(std::vector<Var> vars, std::vector<double> mass,
             double tol = kDefaultTol);

    static JointPmf uniform(std::vector<Var> vars);
    /// Point mass on a single joint symbol.
    static JointPmf delta(std::vector<Var> vars, std::span<const std::size_t> digits);

    const std::vector<Var>& vars() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    std::size_t cells() const { return mass_.size(); }
    const std::vector<double>& mass() const { return mass_; }
    const Layout& layout() const { return layout_; }

    /// Construction from mass already known to be normalized (library
    /// operations use this to avoid renormalization noise).
    struct trusted_t {};
    JointPmf(std::vector<Var> vars, std::vector<double> mass, trusted_t);

    bool has_var(std::string_view name) const;
    /// Axis of `name`; throws name_error if absent.
    std::size_t var_axis(std::string_view name) const;

    double at(std::span<const std::size_t> digits) const {
        return mass_[layout_.index(digits)];
    }

private:
    std::vector<Var> vars_;
    std::vector<double> mass_;
    Layout layout_;
};

/// Conditional distribution: one pmf row over the `to` tuple per `from` tuple.
/// Rows are stored row-major: rows[from_index * out_cells + to_index].
class Kernel {
public:
    Kernel(std::vector<Var> from, std::vector<Var> to, std::vector<double> rows,
           double tol = JointPmf::kDefaultTol);

    /// Identity map from `v` onto a copy named `to_name`.
    static Kernel identity(const Var& v, std::string to_name);
    /// Output independent of input: every row equals `row`.
    static Kernel constant(std::vector<Var> from, Var to, std::vector<double> row);
    /// Deterministic map: `map(from_digits)` gives the output symbol index.
    template <class Fn>
    static Kernel deterministic(std::vector<Var> from, Var to, Fn&& map);

    const std::vector<Var>& from() const { return from_; }
    const std::vector<Var>& to() const { return to_; }
    std::size_t in_cells() const { return in_layout_.total; }
    std::size_t out_cells() const { return out_layout_.total; }
    const Layout& in_layout() const { return in_layout_; }
    const Layout& out_layout() const { return out_layout_; }

    std::span<const double> row(std::size_t from_index) const {
        return {rows_.data() + from_index * out_layout_.total, out_layout_.total};
    }
    double prob(std::size_t from_index, std::size_t to_index) const {
        return rows_[from_index * out_layout_.total + to_index];
    }

private:
    std::vector<Var> from_;
    std::vector<Var> to_;
    std::vector<double> rows_;
    Layout in_layout_;
    Layout out_layout_;
};

/// Chain two kernels X -> A and A -> B into X -> B.
Kernel chain(const Kernel& k1, const Kernel& k2);

/// Marginal mass over `group` in the order given (no normalization), plus the
/// matching Vars. Used by the operations below; exposed for oracles.
std::vector<double> marginal_mass(const JointPmf& p, const Names& group);

/// H(group) of the marginal, in bits (base-2 log, 0 log 0 = 0).
double entropy(const JointPmf& p, const Names& group);
double entropy(const JointPmf& p);

/// I(A;B) in bits, clamped to be nonnegative.
double mutual_information(const JointPmf& p, const Names& a, const Names& b);
/// I(A;B|C) in bits, clamped to be nonnegative.
double mutual_information(const JointPmf& p, const Names& a, const Names& b,
                          const Names& c);
/// Unclamped values, for numeric diagnostics and property tests.
double mutual_information_raw(const JointPmf& p, const Names& a, const Names& b);
double mutual_information_raw(const JointPmf& p, const Names& a, const Names& b,
                              const Names& c);

/// Sum out everything not in `keep`. Output variable order follows the parent
/// pmf; `keep` order is irrelevant. Keeping every variable returns the input
/// unchanged.
JointPmf marginalize(const JointPmf& p, const Names& keep);

/// Joint over p's variables plus k.to, with mass p(a) * k(b | a restricted to
/// k.from). k.from must be present in p; k.to names must be fresh.
JointPmf compose(const JointPmf& p, const Kernel& k);

/// Independent product of two joints over disjoint variable names.
JointPmf product(const JointPmf& a, const JointPmf& b);

/// Conditional p(target | given) extracted from a joint, as a Kernel with
/// `given`/`target` in the caller's order. Rows with zero conditioning mass
/// are filled uniformly.
Kernel conditional(const JointPmf& p, const Names& given, const Names& target);

// --- deterministic kernel helper ---

template <class Fn>
Kernel Kernel::deterministic(std::vector<Var> from, Var to, Fn&& map) {
    std::vector<std::size_t> sizes;
    sizes.reserve(from.size());
    for (const auto& v : from) sizes.push_back(v.alphabet.size());
    Layout in(sizes);
    const std::size_t out_n = to.alphabet.size();
    std::vector<double> rows(in.total * out_n, 0.0);
    std::vector<std::size_t> digits(from.size(), 0);
    for (std::size_t i = 0; i < in.total; ++i) {
        in.digits_of(i, digits);
        std::size_t o = map(std::span<const std::size_t>(digits));
        if (o >= out_n) throw argument_error("deterministic kernel: output index out of range");
        rows[i * out_n + o] = 1.0;
    }
    return Kernel(std::move(from), {std::move(to)}, std::move(rows));
}

} // namespace wtgf::prob
