#include "wtgf/prob.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace wtgf::prob {

namespace {

void check_unique_names(const std::vector<Var>& vars, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& v : vars) {
        if (!seen.insert(v.name).second)
            throw argument_error(std::string(what) + ": duplicate variable name '" + v.name + "'");
    }
}

double plogp(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

} // namespace

// --- Alphabet ---

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw argument_error("alphabet must have at least one symbol");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s).second)
            throw argument_error("alphabet symbols must be unique: '" + s + "'");
    }
}

Alphabet Alphabet::indexed(std::string_view prefix, std::size_t n) {
    std::vector<std::string> syms;
    syms.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        syms.push_back(std::string(prefix) + std::to_string(i));
    return Alphabet(std::move(syms));
}

// --- Layout ---

Layout::Layout(std::vector<std::size_t> axis_sizes) : sizes(std::move(axis_sizes)) {
    strides.assign(sizes.size(), 1);
    total = 1;
    for (std::size_t i = sizes.size(); i-- > 0;) {
        strides[i] = total;
        total *= sizes[i];
    }
}

std::size_t Layout::index(std::span<const std::size_t> digits) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) idx += digits[i] * strides[i];
    return idx;
}

void Layout::digits_of(std::size_t index, std::span<std::size_t> out) const {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        out[i] = index / strides[i];
        index %= strides[i];
    }
}

// --- JointPmf ---

JointPmf::JointPmf(std::vector<Var> vars, std::vector<double> mass, double tol)
    : vars_(std::move(vars)), mass_(std::move(mass)) {
    check_unique_names(vars_, "JointPmf");
    std::vector<std::size_t> sizes;
    sizes.reserve(vars_.size());
    for (const auto& v : vars_) sizes.push_back(v.alphabet.size());
    layout_ = Layout(std::move(sizes));
    if (mass_.size() != layout_.total)
        throw argument_error("JointPmf: mass has " + std::to_string(mass_.size()) +
                             " entries, expected " + std::to_string(layout_.total));
    double sum = 0.0;
    for (double m : mass_) {
        if (m < 0.0 || !std::isfinite(m))
            throw argument_error("JointPmf: entries must be finite and nonnegative");
        sum += m;
    }
    if (std::abs(sum - 1.0) > tol)
        throw argument_error("JointPmf: mass sums to " + std::to_string(sum) +
                             ", outside tolerance " + std::to_string(tol));
    if (sum != 1.0) {
        for (double& m : mass_) m /= sum;
    }
}

JointPmf::JointPmf(std::vector<Var> vars, std::vector<double> mass, trusted_t)
    : vars_(std::move(vars)), mass_(std::move(mass)) {
    std::vector<std::size_t> sizes;
    sizes.reserve(vars_.size());
    for (const auto& v : vars_) sizes.push_back(v.alphabet.size());
    layout_ = Layout(std::move(sizes));
}

JointPmf JointPmf::uniform(std::vector<Var> vars) {
    std::size_t n = 1;
    for (const auto& v : vars) n *= v.alphabet.size();
    return JointPmf(std::move(vars), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointPmf JointPmf::delta(std::vector<Var> vars, std::span<const std::size_t> digits) {
    std::vector<std::size_t> sizes;
    for (const auto& v : vars) sizes.push_back(v.alphabet.size());
    Layout lay(sizes);
    std::vector<double> mass(lay.total, 0.0);
    mass[lay.index(digits)] = 1.0;
    return JointPmf(std::move(vars), std::move(mass));
}

bool JointPmf::has_var(std::string_view name) const {
    for (const auto& v : vars_)
        if (v.name == name) return true;
    return false;
}

std::size_t JointPmf::var_axis(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    throw name_error("unknown variable '" + std::string(name) + "'");
}

// --- Kernel ---

Kernel::Kernel(std::vector<Var> from, std::vector<Var> to, std::vector<double> rows,
               double tol)
    : from_(std::move(from)), to_(std::move(to)), rows_(std::move(rows)) {
    std::vector<Var> all = from_;
    all.insert(all.end(), to_.begin(), to_.end());
    check_unique_names(all, "Kernel");
    if (to_.empty()) throw argument_error("Kernel: output tuple must be nonempty");
    std::vector<std::size_t> in_sizes, out_sizes;
    for (const auto& v : from_) in_sizes.push_back(v.alphabet.size());
    for (const auto& v : to_) out_sizes.push_back(v.alphabet.size());
    in_layout_ = Layout(std::move(in_sizes));
    out_layout_ = Layout(std::move(out_sizes));
    if (rows_.size() != in_layout_.total * out_layout_.total)
        throw argument_error("Kernel: rows have wrong size");
    for (std::size_t r = 0; r < in_layout_.total; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < out_layout_.total; ++c) {
            double v = rows_[r * out_layout_.total + c];
            if (v < 0.0 || !std::isfinite(v))
                throw argument_error("Kernel: row " + std::to_string(r) +
                                     " has a negative or non-finite entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol)
            throw argument_error("Kernel: row " + std::to_string(r) + " sums to " +
                                 std::to_string(sum));
        if (sum != 1.0) {
            for (std::size_t c = 0; c < out_layout_.total; ++c)
                rows_[r * out_layout_.total + c] /= sum;
        }
    }
}

Kernel Kernel::identity(const Var& v, std::string to_name) {
    const std::size_t n = v.alphabet.size();
    std::vector<double> rows(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rows[i * n + i] = 1.0;
    return Kernel({v}, {Var{std::move(to_name), v.alphabet}}, std::move(rows));
}

Kernel Kernel::constant(std::vector<Var> from, Var to, std::vector<double> row) {
    std::size_t in = 1;
    for (const auto& v : from) in *= v.alphabet.size();
    if (row.size() != to.alphabet.size())
        throw argument_error("Kernel::constant: row size mismatch");
    std::vector<double> rows;
    rows.reserve(in * row.size());
    for (std::size_t r = 0; r < in; ++r)
        rows.insert(rows.end(), row.begin(), row.end());
    return Kernel(std::move(from), {std::move(to)}, std::move(rows));
}

Kernel chain(const Kernel& k1, const Kernel& k2) {
    if (k1.to().size() != k2.from().size())
        throw argument_error("chain: middle tuple arity mismatch");
    for (std::size_t i = 0; i < k1.to().size(); ++i)
        if (k1.to()[i].alphabet != k2.from()[i].alphabet)
            throw argument_error("chain: middle alphabet mismatch");
    const std::size_t in = k1.in_cells(), mid = k1.out_cells(), out = k2.out_cells();
    std::vector<double> rows(in * out, 0.0);
    for (std::size_t x = 0; x < in; ++x)
        for (std::size_t a = 0; a < mid; ++a) {
            double p = k1.prob(x, a);
            if (p == 0.0) continue;
            for (std::size_t b = 0; b < out; ++b)
                rows[x * out + b] += p * k2.prob(a, b);
        }
    return Kernel(k1.from(), k2.to(), std::move(rows));
}

// --- group resolution ---

namespace {

std::vector<std::size_t> resolve_axes(const JointPmf& p, const Names& group,
                                      bool sort_by_axis) {
    std::vector<std::size_t> axes;
    axes.reserve(group.size());
    std::unordered_set<std::size_t> seen;
    for (const auto& n : group) {
        std::size_t ax = p.var_axis(n); // throws name_error if unknown
        if (!seen.insert(ax).second)
            throw argument_error("duplicate variable '" + n + "' in group");
        axes.push_back(ax);
    }
    if (sort_by_axis) std::sort(axes.begin(), axes.end());
    return axes;
}

// Accumulate the marginal over `axes` (in the given order) in one pass,
// walking cells with an incremental odometer.
std::vector<double> marginal_over_axes(const JointPmf& p,
                                       const std::vector<std::size_t>& axes) {
    const Layout& lay = p.layout();
    std::vector<std::size_t> bsizes;
    bsizes.reserve(axes.size());
    for (std::size_t ax : axes) bsizes.push_back(lay.sizes[ax]);
    Layout blay(bsizes);

    // contribution of each pmf axis to the bucket index
    std::vector<std::size_t> contrib(lay.sizes.size(), 0);
    for (std::size_t i = 0; i < axes.size(); ++i) contrib[axes[i]] = blay.strides[i];

    std::vector<double> bucket(blay.total, 0.0);
    const std::vector<double>& mass = p.mass();
    std::vector<std::size_t> digits(lay.sizes.size(), 0);
    std::size_t bidx = 0;
    const std::size_t arity = lay.sizes.size();
    for (std::size_t idx = 0;; ++idx) {
        bucket[bidx] += mass[idx];
        if (idx + 1 == lay.total) break;
        for (std::size_t a = arity; a-- > 0;) {
            ++digits[a];
            bidx += contrib[a];
            if (digits[a] < lay.sizes[a]) break;
            bidx -= contrib[a] * digits[a];
            digits[a] = 0;
        }
    }
    return bucket;
}

// Entropy of a bucket vector normalized by its own sum. Both entropy(p, g)
// and entropy(marginalize(p, g)) reduce to this on the same bucket values,
// which keeps the two routes bit-for-bit identical.
double bucket_entropy(const std::vector<double>& bucket) {
    double sum = 0.0;
    for (double b : bucket) sum += b;
    if (sum <= 0.0) return 0.0;
    double h = 0.0;
    for (double b : bucket) h -= plogp(b / sum);
    return h;
}

} // namespace

std::vector<double> marginal_mass(const JointPmf& p, const Names& group) {
    return marginal_over_axes(p, resolve_axes(p, group, /*sort=*/false));
}

double entropy(const JointPmf& p, const Names& group) {
    if (group.empty()) throw argument_error("entropy: empty variable group");
    return bucket_entropy(marginal_over_axes(p, resolve_axes(p, group, /*sort=*/true)));
}

double entropy(const JointPmf& p) {
    Names all;
    for (const auto& v : p.vars()) all.push_back(v.name);
    return entropy(p, all);
}

namespace {

void check_disjoint(const JointPmf& p, const Names& a, const Names& b,
                    const char* an, const char* bn) {
    std::unordered_set<std::string> sa(a.begin(), a.end());
    for (const auto& n : b)
        if (sa.count(n))
            throw argument_error(std::string("mutual_information: groups ") + an +
                                 " and " + bn + " overlap on '" + n + "'");
    (void)p;
}

Names concat(const Names& a, const Names& b) {
    Names r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

} // namespace

double mutual_information_raw(const JointPmf& p, const Names& a, const Names& b) {
    check_disjoint(p, a, b, "A", "B");
    return entropy(p, a) + entropy(p, b) - entropy(p, concat(a, b));
}

double mutual_information_raw(const JointPmf& p, const Names& a, const Names& b,
                              const Names& c) {
    if (c.empty()) return mutual_information_raw(p, a, b);
    check_disjoint(p, a, b, "A", "B");
    check_disjoint(p, a, c, "A", "C");
    check_disjoint(p, b, c, "B", "C");
    // I(A;B|C) = H(AC) + H(BC) - H(C) - H(ABC)
    return entropy(p, concat(a, c)) + entropy(p, concat(b, c)) - entropy(p, c) -
           entropy(p, concat(concat(a, b), c));
}

double mutual_information(const JointPmf& p, const Names& a, const Names& b) {
    return std::max(0.0, mutual_information_raw(p, a, b));
}

double mutual_information(const JointPmf& p, const Names& a, const Names& b,
                          const Names& c) {
    return std::max(0.0, mutual_information_raw(p, a, b, c));
}

JointPmf marginalize(const JointPmf& p, const Names& keep) {
    if (keep.empty()) throw argument_error("marginalize: keep set must be nonempty");
    auto axes = resolve_axes(p, keep, /*sort=*/true);
    if (axes.size() == p.arity()) return p; // identity
    std::vector<Var> vars;
    vars.reserve(axes.size());
    for (std::size_t ax : axes) vars.push_back(p.vars()[ax]);
    return JointPmf(std::move(vars), marginal_over_axes(p, axes), JointPmf::trusted_t{});
}

JointPmf compose(const JointPmf& p, const Kernel& k) {
    // k.from must be present in p with matching alphabets, k.to must be fresh
    std::vector<std::size_t> from_axes;
    from_axes.reserve(k.from().size());
    for (const auto& v : k.from()) {
        std::size_t ax = p.var_axis(v.name);
        if (p.vars()[ax].alphabet != v.alphabet)
            throw model_error("compose: alphabet mismatch on '" + v.name + "'");
        from_axes.push_back(ax);
    }
    for (const auto& v : k.to())
        if (p.has_var(v.name))
            throw argument_error("compose: name collision on '" + v.name + "'");

    std::vector<Var> vars = p.vars();
    vars.insert(vars.end(), k.to().begin(), k.to().end());

    const Layout& lay = p.layout();
    const std::size_t out = k.out_cells();
    std::vector<double> mass(lay.total * out);

    const auto& in_strides = k.in_layout().strides;
    std::vector<std::size_t> digits(lay.sizes.size(), 0);
    std::size_t from_idx = 0;
    // contribution of each pmf axis to the kernel row index
    std::vector<std::size_t> contrib(lay.sizes.size(), 0);
    for (std::size_t i = 0; i < from_axes.size(); ++i)
        contrib[from_axes[i]] = in_strides[i];

    for (std::size_t idx = 0;; ++idx) {
        const double pm = p.mass()[idx];
        auto row = k.row(from_idx);
        double* dst = mass.data() + idx * out;
        for (std::size_t j = 0; j < out; ++j) dst[j] = pm * row[j];
        if (idx + 1 == lay.total) break;
        for (std::size_t a = lay.sizes.size(); a-- > 0;) {
            ++digits[a];
            from_idx += contrib[a];
            if (digits[a] < lay.sizes[a]) break;
            from_idx -= contrib[a] * digits[a];
            digits[a] = 0;
        }
    }
    return JointPmf(std::move(vars), std::move(mass), JointPmf::trusted_t{});
}

JointPmf product(const JointPmf& a, const JointPmf& b) {
    for (const auto& v : b.vars())
        if (a.has_var(v.name))
            throw argument_error("product: name collision on '" + v.name + "'");
    std::vector<Var> vars = a.vars();
    vars.insert(vars.end(), b.vars().begin(), b.vars().end());
    std::vector<double> mass;
    mass.reserve(a.cells() * b.cells());
    for (double ma : a.mass())
        for (double mb : b.mass()) mass.push_back(ma * mb);
    return JointPmf(std::move(vars), std::move(mass), JointPmf::trusted_t{});
}

Kernel conditional(const JointPmf& p, const Names& given, const Names& target) {
    if (target.empty()) throw argument_error("conditional: empty target group");
    if (given.empty()) throw argument_error("conditional: empty given group (use marginalize)");
    check_disjoint(p, given, target, "given", "target");
    Names both = concat(given, target);
    std::vector<double> joint = marginal_mass(p, both);

    std::vector<Var> from_vars, to_vars;
    std::size_t in = 1, out = 1;
    for (const auto& n : given) {
        from_vars.push_back(p.vars()[p.var_axis(n)]);
        in *= from_vars.back().alphabet.size();
    }
    for (const auto& n : target) {
        to_vars.push_back(p.vars()[p.var_axis(n)]);
        out *= to_vars.back().alphabet.size();
    }

    std::vector<double> rows(in * out);
    for (std::size_t r = 0; r < in; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < out; ++c) sum += joint[r * out + c];
        if (sum > 0.0) {
            for (std::size_t c = 0; c < out; ++c) rows[r * out + c] = joint[r * out + c] / sum;
        } else {
            for (std::size_t c = 0; c < out; ++c)
                rows[r * out + c] = 1.0 / static_cast<double>(out);
        }
    }
    return Kernel(std::move(from_vars), std::move(to_vars), std::move(rows));
}

} // namespace wtgf::prob
