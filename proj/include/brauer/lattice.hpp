#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace brauer {

/// Young diagram as a weakly decreasing list of positive row lengths.
/// The empty diagram has no rows.
class Shape {
  public:
    Shape() = default;
    /// Throws std::invalid_argument unless rows are positive and weakly decreasing.
    explicit Shape(std::vector<int> rows);

    const std::vector<int> &rows() const { return rows_; }
    std::size_t num_rows() const { return rows_.size(); }
    int boxes() const { return boxes_; }
    bool empty() const { return rows_.empty(); }

    /// Row length λ_i (1-based); 0 past the last row.
    int row(int i) const;
    /// Column length λ'_j (1-based); 0 past the first row.
    int col(int j) const;
    bool contains(int i, int j) const { return i >= 1 && j >= 1 && j <= row(i); }

    Shape conjugate() const;

    /// λ ∈ Υ_f: at most f boxes and f - boxes even.
    bool in_upsilon(int f) const { return boxes_ <= f && (f - boxes_) % 2 == 0; }

    /// "[2,1]", "[]" for the empty diagram.
    std::string to_string() const;

    friend bool operator==(const Shape &a, const Shape &b) { return a.rows_ == b.rows_; }
    friend auto operator<=>(const Shape &a, const Shape &b) { return a.rows_ <=> b.rows_; }

  private:
    std::vector<int> rows_;
    int boxes_ = 0;
};

/// Parses "[2,1]" / "[]" (whitespace tolerated). Throws std::invalid_argument.
Shape parse_shape(std::string_view text);

/// All diagrams in Υ_f, sorted by row vector.
std::vector<Shape> upsilon(int f);

/// All partitions of n, in reverse lexicographic order ([n] first).
std::vector<Shape> partitions(int n);

using Word = std::vector<int>;

/// #̂_w(k) = #_w(k) - #_w(-k) for k != 0.
int signed_count(std::span<const int> word, int k);

/// A word of nonzero integers whose every prefix has weakly decreasing,
/// nonnegative counting values #̂(1) >= #̂(2) >= ... >= 0. Encodes a path in
/// the Brauer Bratteli diagram: +h adds a box in row h, -h removes one.
class PermutationLattice {
  public:
    /// The empty lattice (order 0, shape ∅).
    PermutationLattice() = default;

    /// Throws std::invalid_argument when the word is not a lattice.
    explicit PermutationLattice(Word word);

    const Word &word() const { return word_; }
    int order() const { return static_cast<int>(word_.size()); }
    const Shape &shape() const { return shape_; }

    /// 1-based entry w_i.
    int at(int i) const { return word_.at(static_cast<std::size_t>(i - 1)); }

    /// "(1,1,2,-1,1,-2,2)", "()" for the empty lattice.
    std::string to_string() const;

    friend bool operator==(const PermutationLattice &a, const PermutationLattice &b) { return a.word_ == b.word_; }

  private:
    struct Unchecked {};
    PermutationLattice(Word word, Shape shape, Unchecked) : word_(std::move(word)), shape_(std::move(shape)) {}
    friend struct LatticeAccess;

    Word word_;
    Shape shape_;
};

struct WordValidation {
    std::optional<PermutationLattice> lattice;
    /// 1-based prefix length at which the chain condition first fails; 0 when valid.
    int failed_prefix = 0;

    explicit operator bool() const { return lattice.has_value(); }
};

WordValidation validate_word(std::span<const int> word);

/// First i entries. Throws std::out_of_range unless 0 <= i <= order.
PermutationLattice prefix(const PermutationLattice &w, int i);

/// w^t with w^t_i = #̂_{w^{(i-1)}}(w_i) + θ(w_i). An involution; the shape of
/// w^t is the conjugate of the shape of w.
PermutationLattice transpose(const PermutationLattice &w);

/// Ξ_f^λ: every lattice of order f and shape λ, ascending under
/// compare_lattices. Empty when λ ∉ Υ_f.
std::vector<PermutationLattice> enumerate_lattices(int f, const Shape &lambda);

/// Number of standard Young tableaux of shape λ (hook-length formula).
std::uint64_t symmetric_group_dimension(const Shape &lambda);

/// dim [f, λ] = f! / ((f-2k)! (2k)!!) · dim(S_{f-2k}; λ); 0 when λ ∉ Υ_f.
std::uint64_t dimension(int f, const Shape &lambda);

/// u < v iff the first nonzero entry of u - v is negative. Throws
/// std::invalid_argument when order or shape differ.
std::strong_ordering compare_lattices(const PermutationLattice &u, const PermutationLattice &v);

/// Parses "(1,-1,1)" and validates it as a lattice. Throws std::invalid_argument.
PermutationLattice parse_lattice(std::string_view text);

} // namespace brauer
