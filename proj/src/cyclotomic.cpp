#include "qsk/cyclotomic.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace qsk {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

RationalPolynomial RationalPolynomial::from_integers(const std::vector<long long>& coefficients) {
    std::vector<Rational> c(coefficients.begin(), coefficients.end());
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::monomial(int n, const Rational& c) {
    if (n < 0) {
        throw std::invalid_argument("monomial: negative degree");
    }
    std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
    coeffs.back() = c;
    return RationalPolynomial(std::move(coeffs));
}

void RationalPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Rational RationalPolynomial::coefficient(int i) const {
    if (i < 0 || i > degree()) {
        return Rational(0);
    }
    return c_[static_cast<std::size_t>(i)];
}

const Rational& RationalPolynomial::leading() const {
    if (c_.empty()) {
        throw std::domain_error("zero polynomial has no leading coefficient");
    }
    return c_.back();
}

bool RationalPolynomial::has_integer_coefficients() const {
    for (const auto& c : c_) {
        if (boost::multiprecision::denominator(c) != 1) {
            return false;
        }
    }
    return true;
}

Complex RationalPolynomial::evaluate(Complex x) const {
    Complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + it->convert_to<double>();
    }
    return acc;
}

std::string RationalPolynomial::to_string() const {
    if (c_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) {
            continue;
        }
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (!unit || i == 0) {
            out << mag.str();
        }
        if (i >= 1) {
            out << "x";
        }
        if (i >= 2) {
            out << "^" << i;
        }
    }
    return out.str();
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        c[i] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        c[i] += b.c_[i];
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a + Rational(-1) * b;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p) {
    std::vector<Rational> c = p.c_;
    for (auto& x : c) {
        x *= s;
    }
    return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> poly_divmod(const RationalPolynomial& f,
                                                              const RationalPolynomial& g) {
    if (g.is_zero()) {
        throw std::domain_error("poly_divmod: division by the zero polynomial");
    }
    const int dg = g.degree();
    std::vector<Rational> rem = f.coefficients();
    const int df = f.degree();
    if (df < dg) {
        return {RationalPolynomial{}, f};
    }
    std::vector<Rational> quot(static_cast<std::size_t>(df - dg + 1), Rational(0));
    const Rational& lead = g.leading();
    for (int i = df; i >= dg; --i) {
        const Rational factor = rem[static_cast<std::size_t>(i)] / lead;
        if (factor == 0) {
            continue;
        }
        quot[static_cast<std::size_t>(i - dg)] = factor;
        for (int j = 0; j <= dg; ++j) {
            rem[static_cast<std::size_t>(i - dg + j)] -= factor * g.coefficients()[static_cast<std::size_t>(j)];
        }
    }
    rem.resize(static_cast<std::size_t>(dg));
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

std::vector<int> proper_divisors(int d) {
    if (d < 1) {
        throw std::invalid_argument("proper_divisors: d must be positive");
    }
    std::vector<int> out;
    for (int n = 1; n < d; ++n) {
        if (d % n == 0) {
            out.push_back(n);
        }
    }
    return out;
}

RationalPolynomial cyclotomic_poly(int n) {
    if (n < 1) {
        throw std::invalid_argument("cyclotomic_poly: n must be positive");
    }
    std::map<int, RationalPolynomial> table;
    std::vector<int> divisors = proper_divisors(n);
    divisors.push_back(n);
    for (const int m : divisors) {
        RationalPolynomial value = RationalPolynomial::monomial(m) - RationalPolynomial::constant(1);
        for (const int k : proper_divisors(m)) {
            auto [q, r] = poly_divmod(value, table.at(k));
            if (!r.is_zero()) {
                throw std::logic_error("cyclotomic_poly: inexact division");
            }
            value = std::move(q);
        }
        table.emplace(m, std::move(value));
    }
    return table.at(n);
}

RationalPolynomial geometric_polynomial(int d) {
    if (d < 1) {
        throw std::invalid_argument("geometric_polynomial: d must be positive");
    }
    return RationalPolynomial(std::vector<Rational>(static_cast<std::size_t>(d), Rational(1)));
}

bool check_product_identity(int d) {
    RationalPolynomial product = RationalPolynomial::constant(1);
    for (const int n : proper_divisors(d)) {
        product = product * cyclotomic_poly(d / n);
    }
    return product == geometric_polynomial(d);
}

EqualCoefficientVerdict lemma2_conclude(const RationalPolynomial& w, int d) {
    if (d < 2) {
        throw std::invalid_argument("lemma2_conclude: d must be at least 2");
    }
    if (w.degree() > d - 1) {
        throw std::invalid_argument("lemma2_conclude: degree of w exceeds d - 1");
    }
    EqualCoefficientVerdict out;
    RationalPolynomial q = w;
    for (const int n : proper_divisors(d)) {
        const int m = d / n;
        out.cyclotomic_order.push_back(m);
        auto [quot, rem] = poly_divmod(q, cyclotomic_poly(m));
        if (!rem.is_zero()) {
            out.failing_index = m;
            out.remainder = std::move(rem);
            return out;
        }
        q = std::move(quot);
    }
    out.equal_coefficients = q.degree() <= 0;
    if (out.equal_coefficients) {
        out.constant = q.coefficient(0);
    }
    return out;
}

}  // namespace qsk
