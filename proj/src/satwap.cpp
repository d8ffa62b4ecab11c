#include "qsk/satwap.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsk {

Complex coefficient_a(int d, int k) {
    if (d < 2 || k < 1 || k > d - 1) {
        std::ostringstream msg;
        msg << "coefficient_a: k = " << k << " outside [1, " << d - 1 << "]";
        throw std::invalid_argument(msg.str());
    }
    const double phase = std::numbers::pi * (2.0 * k - d) / (4.0 * d);
    return std::polar(1.0 / std::numbers::sqrt2, phase);
}

BellFunctional::BellFunctional(int d) : d_(d) {
    if (d < 2) {
        throw std::invalid_argument("BellFunctional: d must be at least 2");
    }
    for (int k = 1; k < d; ++k) {
        a_.push_back(coefficient_a(d, k));
    }
}

Complex BellFunctional::coefficient(int x, int y, int k) const {
    const Complex ak = a(k);
    if (x == 0 && y == 0) {
        return ak;
    }
    if (x == 0 && y == 1) {
        return std::conj(ak) * omega_pow(d_, k);
    }
    if (x == 1 && y == 0) {
        return std::conj(ak);
    }
    if (x == 1 && y == 1) {
        return ak;
    }
    throw std::out_of_range("BellFunctional::coefficient: settings must be 0 or 1");
}

Complex BellFunctional::evaluate_complex(const CorrelatorTensor& c) const {
    if (c.scenario().d != d_ || c.scenario().m != 2) {
        throw std::invalid_argument("BellFunctional: correlators from a different scenario");
    }
    Complex total{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int k = 1; k < d_; ++k) {
                total += coefficient(x, y, k) * c(x, y, k, d_ - k);
            }
        }
    }
    return total;
}

double BellFunctional::evaluate(const CorrelatorTensor& c, double imag_tol) const {
    const Complex v = evaluate_complex(c);
    if (std::abs(v.imag()) > imag_tol) {
        std::ostringstream msg;
        msg << "SATWAP value has imaginary part " << v.imag()
            << "; correlators are malformed or the coefficient convention is wrong";
        throw std::domain_error(msg.str());
    }
    return v.real();
}

BellFunctional satwap_functional(int d) { return BellFunctional(d); }

double classical_bound(int d) {
    if (d < 2) {
        throw std::invalid_argument("classical_bound: d must be at least 2");
    }
    const double x = std::numbers::pi / (4.0 * d);
    return 0.5 * (3.0 / std::tan(x) - 1.0 / std::tan(3.0 * x)) - 2.0;
}

double quantum_bound(int d) {
    if (d < 2) {
        throw std::invalid_argument("quantum_bound: d must be at least 2");
    }
    return 2.0 * (d - 1);
}

ComplexMatrix bell_operator(const BellFunctional& f, const Realization& r, const Tolerances& tol) {
    r.validate(tol);
    if (r.d != f.d()) {
        throw std::invalid_argument("bell_operator: realization and functional disagree on d");
    }
    const int d = f.d();
    ComplexMatrix out = ComplexMatrix::Zero(r.dim_a() * r.dim_b(), r.dim_a() * r.dim_b());
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int k = 1; k < d; ++k) {
                out += f.coefficient(x, y, k) *
                       kron(unitary_power(r.A[static_cast<std::size_t>(x)], k, tol),
                            unitary_power(r.B[static_cast<std::size_t>(y)], d - k, tol));
            }
        }
    }
    return out;
}

ProbabilityFunctional probability_form(const BellFunctional& f, double imag_tol) {
    const int d = f.d();
    ProbabilityFunctional t(Scenario{d, 2});
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    Complex acc{};
                    for (int k = 1; k < d; ++k) {
                        acc += f.coefficient(x, y, k) * omega_pow(d, (k * (a - b + d)) % d);
                    }
                    if (std::abs(acc.imag()) > imag_tol) {
                        throw std::domain_error("probability_form: coefficient is not real");
                    }
                    t(x, y, a, b) = acc.real();
                }
            }
        }
    }
    return t;
}

double satwap_value(const Realization& r, const Tolerances& tol) {
    return satwap_functional(r.d).evaluate(correlators_from_realization(r, tol));
}

}  // namespace qsk
