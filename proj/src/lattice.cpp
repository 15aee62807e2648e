#include "brauer/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace brauer {

struct LatticeAccess {
    static PermutationLattice make(Word word, Shape shape) {
        return PermutationLattice(std::move(word), std::move(shape), PermutationLattice::Unchecked{});
    }
};

Shape::Shape(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (rows_[k] <= 0)
            throw std::invalid_argument("shape rows must be positive");
        if (k > 0 && rows_[k] > rows_[k - 1])
            throw std::invalid_argument("shape rows must be weakly decreasing");
        boxes_ += rows_[k];
    }
}

int Shape::row(int i) const {
    if (i < 1 || i > static_cast<int>(rows_.size()))
        return 0;
    return rows_[static_cast<std::size_t>(i - 1)];
}

int Shape::col(int j) const {
    if (j < 1)
        return 0;
    int n = 0;
    for (int r : rows_) {
        if (r < j)
            break;
        ++n;
    }
    return n;
}

Shape Shape::conjugate() const {
    std::vector<int> out;
    for (int j = 1; j <= row(1); ++j)
        out.push_back(col(j));
    return Shape(std::move(out));
}

std::string Shape::to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (k)
            s += ',';
        s += std::to_string(rows_[k]);
    }
    return s + "]";
}

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Parses a delimited, comma-separated list of integers such as "(1,-2)".
std::vector<int> parse_int_list(std::string_view text, char open, char close) {
    const std::string whole(text);
    text = strip(text);
    if (text.size() < 2 || text.front() != open || text.back() != close)
        throw std::invalid_argument("expected " + std::string(1, open) + "..." + std::string(1, close) + ": '" +
                                    whole + "'");
    text = strip(text.substr(1, text.size() - 2));
    std::vector<int> out;
    if (text.empty())
        return out;
    while (true) {
        const auto comma = text.find(',');
        std::string_view item = strip(text.substr(0, comma));
        if (!item.empty() && item.front() == '+')
            item.remove_prefix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw std::invalid_argument("malformed integer list '" + whole + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        text = text.substr(comma + 1);
    }
    return out;
}

} // namespace

Shape parse_shape(std::string_view text) { return Shape(parse_int_list(text, '[', ']')); }

std::vector<Shape> partitions(int n) {
    std::vector<Shape> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<Shape> upsilon(int f) {
    std::vector<Shape> out;
    for (int k = f; k >= 0; k -= 2)
        for (auto &s : partitions(k))
            out.push_back(std::move(s));
    std::sort(out.begin(), out.end());
    return out;
}

int signed_count(std::span<const int> word, int k) {
    int n = 0;
    for (int a : word) {
        if (a == k)
            ++n;
        else if (a == -k)
            --n;
    }
    return n;
}

namespace {

// Row lengths of the running diagram while scanning a word; index h-1 holds
// #̂(h). Returns false as soon as the chain condition breaks.
bool apply_step(std::vector<int> &counts, int entry) {
    if (entry == 0)
        return false;
    const auto h = static_cast<std::size_t>(entry > 0 ? entry : -entry);
    if (counts.size() < h + 1)
        counts.resize(h + 1, 0);
    counts[h - 1] += entry > 0 ? 1 : -1;
    const int c = counts[h - 1];
    if (c < 0)
        return false;
    if (h >= 2 && counts[h - 2] < c)
        return false;
    if (counts[h] > c)
        return false;
    return true;
}

Shape shape_from_counts(const std::vector<int> &counts) {
    std::vector<int> rows;
    for (int c : counts) {
        if (c == 0)
            break;
        rows.push_back(c);
    }
    return Shape(std::move(rows));
}

} // namespace

WordValidation validate_word(std::span<const int> word) {
    std::vector<int> counts;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!apply_step(counts, word[i]))
            return WordValidation{std::nullopt, static_cast<int>(i + 1)};
    }
    return WordValidation{LatticeAccess::make(Word(word.begin(), word.end()), shape_from_counts(counts)), 0};
}

PermutationLattice::PermutationLattice(Word word) {
    auto v = validate_word(word);
    if (!v)
        throw std::invalid_argument("not a permutation lattice (chain condition fails at prefix " +
                                    std::to_string(v.failed_prefix) + ")");
    *this = std::move(*v.lattice);
}

std::string PermutationLattice::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < word_.size(); ++k) {
        if (k)
            s += ',';
        s += std::to_string(word_[k]);
    }
    return s + ")";
}

PermutationLattice prefix(const PermutationLattice &w, int i) {
    if (i < 0 || i > w.order())
        throw std::out_of_range("prefix length " + std::to_string(i) + " outside [0, " + std::to_string(w.order()) +
                                "]");
    if (i == w.order())
        return w;
    std::span<const int> s(w.word().data(), static_cast<std::size_t>(i));
    return *validate_word(s).lattice;
}

PermutationLattice transpose(const PermutationLattice &w) {
    Word out(w.word().size());
    std::span<const int> all(w.word());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int a = all[i];
        out[i] = signed_count(all.first(i), a) + (a > 0 ? 1 : 0);
    }
    auto v = validate_word(out);
    if (!v)
        throw std::logic_error("transpose produced a non-lattice from " + w.to_string());
    return std::move(*v.lattice);
}

std::vector<PermutationLattice> enumerate_lattices(int f, const Shape &lambda) {
    std::vector<PermutationLattice> out;
    if (f < 0 || !lambda.in_upsilon(f))
        return out;
    // Depth-first walk down the Bratteli diagram. A prefix with diagram μ can
    // still reach λ in r steps iff |μ Δ λ| <= r (parity is automatic).
    std::vector<int> rows;
    Word word;
    auto distance = [&]() {
        int d = 0;
        const std::size_t n = std::max(rows.size(), lambda.rows().size());
        for (std::size_t k = 0; k < n; ++k) {
            const int a = k < rows.size() ? rows[k] : 0;
            const int b = lambda.row(static_cast<int>(k + 1));
            d += a > b ? a - b : b - a;
        }
        return d;
    };
    std::function<void()> rec = [&]() {
        const int remaining = f - static_cast<int>(word.size());
        if (distance() > remaining)
            return;
        if (remaining == 0) {
            out.push_back(LatticeAccess::make(word, lambda));
            return;
        }
        const int nrows = static_cast<int>(rows.size());
        // Removals (negative entries) first, most negative first, then
        // additions in increasing row order: yields ascending words.
        for (int h = nrows; h >= 1; --h) {
            const int below = h < nrows ? rows[static_cast<std::size_t>(h)] : 0;
            if (rows[static_cast<std::size_t>(h - 1)] - 1 < below)
                continue;
            --rows[static_cast<std::size_t>(h - 1)];
            const bool popped = rows.back() == 0;
            if (popped)
                rows.pop_back();
            word.push_back(-h);
            rec();
            word.pop_back();
            if (popped)
                rows.push_back(0);
            ++rows[static_cast<std::size_t>(h - 1)];
        }
        for (int h = 1; h <= nrows + 1; ++h) {
            const int cur = h <= nrows ? rows[static_cast<std::size_t>(h - 1)] : 0;
            if (h >= 2 && rows[static_cast<std::size_t>(h - 2)] < cur + 1)
                continue;
            if (h == nrows + 1)
                rows.push_back(1);
            else
                ++rows[static_cast<std::size_t>(h - 1)];
            word.push_back(h);
            rec();
            word.pop_back();
            if (h == nrows + 1)
                rows.pop_back();
            else
                --rows[static_cast<std::size_t>(h - 1)];
        }
    };
    rec();
    return out;
}

std::uint64_t symmetric_group_dimension(const Shape &lambda) {
    using boost::multiprecision::cpp_int;
    cpp_int num = 1, den = 1;
    for (int k = 2; k <= lambda.boxes(); ++k)
        num *= k;
    for (int i = 1; i <= static_cast<int>(lambda.num_rows()); ++i)
        for (int j = 1; j <= lambda.row(i); ++j)
            den *= lambda.row(i) + lambda.col(j) - i - j + 1;
    return (num / den).convert_to<std::uint64_t>();
}

std::uint64_t dimension(int f, const Shape &lambda) {
    if (f < 0 || !lambda.in_upsilon(f))
        return 0;
    using boost::multiprecision::cpp_int;
    const int two_k = f - lambda.boxes();
    cpp_int fact_f = 1, fact_rest = 1, double_fact = 1;
    for (int k = 2; k <= f; ++k)
        fact_f *= k;
    for (int k = 2; k <= f - two_k; ++k)
        fact_rest *= k;
    for (int k = two_k; k >= 2; k -= 2)
        double_fact *= k;
    const cpp_int d = fact_f / (fact_rest * double_fact) * symmetric_group_dimension(lambda);
    return d.convert_to<std::uint64_t>();
}

std::strong_ordering compare_lattices(const PermutationLattice &u, const PermutationLattice &v) {
    if (u.order() != v.order() || !(u.shape() == v.shape()))
        throw std::invalid_argument("compare_lattices: " + u.to_string() + " and " + v.to_string() +
                                    " differ in order or shape");
    for (std::size_t k = 0; k < u.word().size(); ++k) {
        const int d = u.word()[k] - v.word()[k];
        if (d != 0)
            return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

PermutationLattice parse_lattice(std::string_view text) {
    return PermutationLattice(parse_int_list(text, '(', ')'));
}

} // namespace brauer
