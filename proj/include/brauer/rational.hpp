#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace brauer {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" with q > 0 in lowest terms, or "p" when q == 1.
std::string to_string(const Rational &r);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational &r);

bool is_integer(const Rational &r);

/// Polynomial in one variable with exact rational coefficients, ascending
/// degree. The zero polynomial has no coefficients.
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coefficients);

    static RationalPolynomial constant(const Rational &c);
    /// a + b t
    static RationalPolynomial linear(const Rational &a, const Rational &b);

    const std::vector<Rational> &coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational operator()(const Rational &t) const;

    RationalPolynomial &operator+=(const RationalPolynomial &o);
    RationalPolynomial &operator-=(const RationalPolynomial &o);
    RationalPolynomial &operator*=(const RationalPolynomial &o);
    RationalPolynomial &operator*=(const Rational &c);

    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial &b) { return a += b; }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial &b) { return a -= b; }
    friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial &b) { return a *= b; }
    friend RationalPolynomial operator*(RationalPolynomial a, const Rational &c) { return a *= c; }
    friend bool operator==(const RationalPolynomial &, const RationalPolynomial &) = default;

    /// Synthetic division by (t - root). Returns the quotient; the remainder
    /// (the value at root) is written to *remainder when given.
    RationalPolynomial divide_by_root(const Rational &root, Rational *remainder = nullptr) const;

    /// Human-readable form in the variable x, e.g. "-1/2*x + 1/2*x^2".
    std::string to_string() const;

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Exact value of num(t)/den(t) at t = at, cancelling common (t - at) factors
/// so removable singularities evaluate to their limit. Returns false when the
/// denominator still vanishes after cancellation (a genuine pole).
bool evaluate_ratio(const RationalPolynomial &num, const RationalPolynomial &den, const Rational &at,
                    Rational &value);

} // namespace brauer
