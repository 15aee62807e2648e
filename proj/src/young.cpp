#include "brauer/young.hpp"

#include <stdexcept>

namespace brauer {

RationalParam RationalParam::for_order(Rational x, int f, bool allow_nonsemisimple) {
    if (!allow_nonsemisimple && !is_semisimple(x, f))
        throw ParameterGuardError("x = " + brauer::to_string(x) + " is an integer below f - 1 = " +
                                  std::to_string(f - 1) + "; B_" + std::to_string(f) + "(x) is not semisimple");
    return RationalParam(std::move(x));
}

bool RationalParam::is_semisimple(const Rational &x, int f) { return !is_integer(x) || x >= f - 1; }

namespace {

void require_box(const Shape &lambda, int i, int j) {
    if (!lambda.contains(i, j))
        throw std::out_of_range("box (" + std::to_string(i) + "," + std::to_string(j) + ") not in " +
                                lambda.to_string());
}

void require_position(const PermutationLattice &w, int i) {
    if (i < 1 || i > w.order())
        throw std::out_of_range("position " + std::to_string(i) + " outside lattice of order " +
                                std::to_string(w.order()));
}

} // namespace

int hook(const Shape &lambda, int i, int j) {
    require_box(lambda, i, j);
    return lambda.row(i) + lambda.col(j) - i - j + 1;
}

int dfun(const Shape &lambda, int i, int j) {
    require_box(lambda, i, j);
    if (i <= j)
        return lambda.row(i) + lambda.row(j) - i - j + 1;
    return -lambda.col(i) - lambda.col(j) + i + j - 1;
}

RationalPolynomial p_poly(const Shape &lambda) {
    auto p = RationalPolynomial::constant(1);
    for (int i = 1; i <= static_cast<int>(lambda.num_rows()); ++i)
        for (int j = 1; j <= lambda.row(i); ++j)
            p *= RationalPolynomial::linear(Rational(dfun(lambda, i, j) - 1, hook(lambda, i, j)),
                                            Rational(1, hook(lambda, i, j)));
    return p;
}

Rational p_eval(const Shape &lambda, const RationalParam &x) { return p_poly(lambda)(x.value()); }

RationalPolynomial nabla_poly(const PermutationLattice &w, int i, NablaConvention conv) {
    require_position(w, i);
    const int wt = transpose(w).at(i);
    const int wi = w.at(i);
    // (w^t_i - w_i - x) + x θ(w_i); the x terms cancel on additions.
    if (wi > 0)
        return RationalPolynomial::constant(wt - wi);
    const int shift = conv == NablaConvention::Calibrated ? 1 : 0;
    return RationalPolynomial::linear(wt - wi + shift, -1);
}

Rational nabla(const PermutationLattice &w, int i, const RationalParam &x, NablaConvention conv) {
    return nabla_poly(w, i, conv)(x.value());
}

RationalPolynomial diamond_poly(const PermutationLattice &u, const PermutationLattice &v, int i,
                                NablaConvention conv) {
    if (u.order() != v.order() || !(u.shape() == v.shape()))
        throw std::invalid_argument("diamond: lattices differ in order or shape");
    if (i < 1 || i >= u.order())
        throw std::out_of_range("diamond index " + std::to_string(i) + " outside [1, " +
                                std::to_string(u.order() - 1) + "]");
    return nabla_poly(u, i + 1, conv) - nabla_poly(v, i, conv);
}

Rational diamond(const PermutationLattice &u, const PermutationLattice &v, int i, const RationalParam &x,
                 NablaConvention conv) {
    return diamond_poly(u, v, i, conv)(x.value());
}

Rational axial_distance(const PermutationLattice &w, int i, int j, const RationalParam &x, NablaConvention conv) {
    require_position(w, i);
    require_position(w, j);
    Rational sum = 0;
    const int lo = std::min(i, j), hi = std::max(i, j);
    for (int h = lo; h < hi; ++h)
        sum += diamond(w, w, h, x, conv);
    return i <= j ? sum : Rational(-sum);
}

} // namespace brauer
