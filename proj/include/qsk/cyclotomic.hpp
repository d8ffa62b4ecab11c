#pragma once

// Exact polynomials over Q: Euclidean division, cyclotomic polynomials and
// the equal-coefficients test driven by divisibility by Phi_{d/n}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsk/linalg.hpp"

namespace qsk {

using Rational = boost::multiprecision::cpp_rational;

class RationalPolynomial {
public:
    RationalPolynomial() = default;
    /// Coefficients in ascending degree; trailing zeros are dropped.
    explicit RationalPolynomial(std::vector<Rational> coefficients);
    static RationalPolynomial from_integers(const std::vector<long long>& coefficients);
    static RationalPolynomial constant(const Rational& c);
    /// x^n.
    static RationalPolynomial monomial(int n, const Rational& c = 1);

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] Rational coefficient(int i) const;
    [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
    [[nodiscard]] const Rational& leading() const;
    [[nodiscard]] bool has_integer_coefficients() const;

    [[nodiscard]] Complex evaluate(Complex x) const;
    /// e.g. "x^4 - x^2 + 1"; "0" for the zero polynomial.
    [[nodiscard]] std::string to_string() const;

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p);
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

/// f = q g + r with deg r < deg g. Throws std::domain_error if g is zero.
[[nodiscard]] std::pair<RationalPolynomial, RationalPolynomial> poly_divmod(const RationalPolynomial& f,
                                                                            const RationalPolynomial& g);

/// Phi_n = (x^n - 1) / prod_{m | n, m < n} Phi_m.
[[nodiscard]] RationalPolynomial cyclotomic_poly(int n);

/// Divisors of d below d, ascending. Throws std::invalid_argument if d < 1.
[[nodiscard]] std::vector<int> proper_divisors(int d);

/// 1 + x + ... + x^{d-1}.
[[nodiscard]] RationalPolynomial geometric_polynomial(int d);

/// prod over proper divisors n of Phi_{d/n}, compared exactly with
/// 1 + x + ... + x^{d-1}.
[[nodiscard]] bool check_product_identity(int d);

struct EqualCoefficientVerdict {
    bool equal_coefficients = false;
    std::optional<Rational> constant;   // common coefficient when accepted
    std::optional<int> failing_index;   // m of the first Phi_m leaving a remainder
    RationalPolynomial remainder;       // that remainder
    std::vector<int> cyclotomic_order;  // the m's divided by, in order
};

/// Divides w successively by Phi_{d/n} for the proper divisors n of d in
/// ascending order, requiring zero remainders; accepts iff all vanish (the
/// final quotient is then the common coefficient). Throws
/// std::invalid_argument if deg w > d - 1.
[[nodiscard]] EqualCoefficientVerdict lemma2_conclude(const RationalPolynomial& w, int d);

}  // namespace qsk
