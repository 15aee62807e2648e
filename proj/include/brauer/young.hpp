#pragma once

#include "brauer/lattice.hpp"
#include "brauer/rational.hpp"

namespace brauer {

/// Thrown when x lies in the non-semisimple range for the working order.
struct ParameterGuardError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The parameter x of B_f(x). Semisimple when x is not an integer or is an
/// integer with x >= f - 1.
class RationalParam {
  public:
    /// Unchecked; use for_order() when a working order is known.
    explicit RationalParam(Rational x) : x_(std::move(x)) {}

    /// Throws ParameterGuardError for integer x < f - 1 unless allowed.
    static RationalParam for_order(Rational x, int f, bool allow_nonsemisimple = false);

    static bool is_semisimple(const Rational &x, int f);

    const Rational &value() const { return x_; }
    std::string to_string() const { return brauer::to_string(x_); }

  private:
    Rational x_;
};

/// Which value ∇ takes on removal steps (w_i < 0).
///
/// Literal:    ∇_i(w) = (w^t_i - w_i - x) + x θ(w_i), i.e. -x - content.
/// Calibrated: removal steps take 1 - x - content (the Jucys-Murphy
///             eigenvalue); addition steps are content in both conventions.
///
/// Only the calibrated values make the explicit generator action satisfy the
/// defining relations, so representation code uses Calibrated.
enum class NablaConvention { Literal, Calibrated };

/// h(i,j) = λ_i + λ'_j - i - j + 1. Throws std::out_of_range for boxes outside λ.
int hook(const Shape &lambda, int i, int j);

/// d(i,j): λ_i + λ_j - i - j + 1 for i <= j, -λ'_i - λ'_j + i + j - 1 otherwise.
int dfun(const Shape &lambda, int i, int j);

/// P_λ(x) = Π_{(i,j) ∈ λ} (x - 1 + d(i,j)) / h(i,j). P_λ(2n+1) is the
/// dimension of the SO(2n+1) irrep λ.
RationalPolynomial p_poly(const Shape &lambda);

Rational p_eval(const Shape &lambda, const RationalParam &x);

/// ∇_i(w) as a polynomial of degree <= 1 in x.
RationalPolynomial nabla_poly(const PermutationLattice &w, int i, NablaConvention conv = NablaConvention::Literal);

Rational nabla(const PermutationLattice &w, int i, const RationalParam &x,
               NablaConvention conv = NablaConvention::Literal);

/// ◇_i(u,v) = ∇_{i+1}(u) - ∇_i(v), as a polynomial in x.
RationalPolynomial diamond_poly(const PermutationLattice &u, const PermutationLattice &v, int i,
                                NablaConvention conv = NablaConvention::Literal);

Rational diamond(const PermutationLattice &u, const PermutationLattice &v, int i, const RationalParam &x,
                 NablaConvention conv = NablaConvention::Literal);

/// d_ij(w): sum of ◇_h(w,w) for h in [i, j) when i < j, its negative for
/// i > j, zero on the diagonal.
Rational axial_distance(const PermutationLattice &w, int i, int j, const RationalParam &x,
                        NablaConvention conv = NablaConvention::Literal);

} // namespace brauer
