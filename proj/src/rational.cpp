#include "brauer/rational.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace brauer {

std::string to_string(const Rational &r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::size_t pos = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+'))
        pos = 1;
    if (pos == s.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    for (std::size_t k = pos; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    BigInt v(std::string(s.substr(pos)));
    return s[0] == '-' ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

double to_double(const Rational &r) { return r.convert_to<double>(); }

bool is_integer(const Rational &r) { return boost::multiprecision::denominator(r) == 1; }

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational &c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::linear(const Rational &a, const Rational &b) {
    return RationalPolynomial({a, b});
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Rational RationalPolynomial::operator()(const Rational &t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

RationalPolynomial &RationalPolynomial::operator+=(const RationalPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
        coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial &RationalPolynomial::operator-=(const RationalPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
        coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial &RationalPolynomial::operator*=(const RationalPolynomial &o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t a = 0; a < coeffs_.size(); ++a)
        for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
            out[a + b] += coeffs_[a] * o.coeffs_[b];
    coeffs_ = std::move(out);
    trim();
    return *this;
}

RationalPolynomial &RationalPolynomial::operator*=(const Rational &c) {
    for (auto &v : coeffs_)
        v *= c;
    trim();
    return *this;
}

RationalPolynomial RationalPolynomial::divide_by_root(const Rational &root, Rational *remainder) const {
    if (coeffs_.empty()) {
        if (remainder)
            *remainder = 0;
        return {};
    }
    std::vector<Rational> q(coeffs_.size() - 1);
    Rational carry = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        carry = carry * root + coeffs_[k];
        if (k > 0)
            q[k - 1] = carry;
    }
    if (remainder)
        *remainder = carry;
    return RationalPolynomial(std::move(q));
}

std::string RationalPolynomial::to_string() const {
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << brauer::to_string(coeffs_[k]);
        if (k >= 1)
            os << "*x";
        if (k >= 2)
            os << "^" << k;
    }
    return os.str();
}

bool evaluate_ratio(const RationalPolynomial &num, const RationalPolynomial &den, const Rational &at,
                    Rational &value) {
    RationalPolynomial n = num, d = den;
    while (!d.is_zero() && d(at) == 0) {
        if (n(at) != 0)
            return false;
        n = n.divide_by_root(at);
        d = d.divide_by_root(at);
    }
    if (d.is_zero())
        return false;
    value = n(at) / d(at);
    return true;
}

} // namespace brauer
