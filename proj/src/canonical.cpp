#include "qsk/canonical.hpp"

#include <cmath>
#include <stdexcept>

#include "qsk/satwap.hpp"

namespace qsk {

namespace {

void require_d(int d) {
    if (d < 2) {
        throw std::invalid_argument("d must be at least 2");
    }
}

void require_setting(int k) {
    if (k != 1 && k != 2) {
        throw std::invalid_argument("CGLMP setting index must be 1 or 2");
    }
}

ComplexMatrix observable_from_basis(int d, const ComplexMatrix& basis) {
    Eigen::VectorXcd phases(d);
    for (int r = 0; r < d; ++r) {
        phases(r) = omega_pow(d, r);
    }
    return basis * phases.asDiagonal() * basis.adjoint();
}

}  // namespace

ComplexMatrix z_observable(int d) {
    require_d(d);
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        z(i, i) = omega_pow(d, i);
    }
    return z;
}

ComplexMatrix t_observable(int d) {
    require_d(d);
    ComplexMatrix t(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
            t(i, j) = -(2.0 / d) * sign * omega_pow(d, (i + j + 1) / 2.0);
        }
        t(i, i) += omega_pow(d, i + 0.5);
    }
    return t;
}

StateVector t_eigenvector(int d, int r) {
    require_d(d);
    if (r < 0 || r >= d) {
        throw std::out_of_range("t_eigenvector: r outside [0, d)");
    }
    StateVector v(d);
    for (int q = 0; q < d; ++q) {
        const double sign = q == 0 ? -1.0 : 1.0;
        v(q) = (2.0 / d) * sign * omega_pow(d, -q / 2.0) / (1.0 - omega_pow(d, r - q - 0.5));
    }
    return v;
}

ComplexMatrix t_eigenbasis(int d) {
    ComplexMatrix basis(d, d);
    for (int r = 0; r < d; ++r) {
        basis.col(r) = t_eigenvector(d, r);
    }
    return basis;
}

std::array<ComplexMatrix, 2> ideal_alice_observables(int d) {
    const Complex a1 = coefficient_a(d, 1);
    const Complex a1c = std::conj(a1);
    const ComplexMatrix z = z_observable(d);
    const ComplexMatrix t = t_observable(d);
    return {a1c * z - 2.0 * a1c * a1c * a1c * t, a1 * z + a1c * t};
}

StateVector maximally_entangled(int d) {
    require_d(d);
    StateVector phi = StateVector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        phi(i * d + i) = amp;
    }
    return phi;
}

StateVector cglmp_eigenvector_a(int d, int k, int r) {
    require_d(d);
    require_setting(k);
    const double alpha = (k - 0.5) / 2.0;
    StateVector v(d);
    for (int q = 0; q < d; ++q) {
        v(q) = omega_pow(d, (r - alpha) * q) / std::sqrt(static_cast<double>(d));
    }
    return v;
}

StateVector cglmp_eigenvector_b(int d, int k, int r) {
    require_d(d);
    require_setting(k);
    const double beta = k / 2.0;
    StateVector v(d);
    for (int q = 0; q < d; ++q) {
        v(q) = omega_pow(d, -(r - beta) * q) / std::sqrt(static_cast<double>(d));
    }
    return v;
}

CglmpObservables cglmp_observables(int d) {
    CglmpObservables out;
    for (int k = 1; k <= 2; ++k) {
        ComplexMatrix ba(d, d);
        ComplexMatrix bb(d, d);
        for (int r = 0; r < d; ++r) {
            ba.col(r) = cglmp_eigenvector_a(d, k, r);
            bb.col(r) = cglmp_eigenvector_b(d, k, r);
        }
        out.A[static_cast<std::size_t>(k - 1)] = observable_from_basis(d, ba);
        out.B[static_cast<std::size_t>(k - 1)] = observable_from_basis(d, bb);
    }
    return out;
}

StructuralUnitaries structural_unitaries(int d) {
    require_d(d);
    StructuralUnitaries s;
    s.F.resize(d, d);
    s.Y = ComplexMatrix::Zero(d, d);
    s.S = ComplexMatrix::Zero(d, d);
    s.M1 = ComplexMatrix::Zero(d, d);
    s.M2 = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            s.F(i, j) = norm * omega_pow(d, (i * j) % d);
        }
        s.Y(i, i) = (i == 0 ? 1.0 : -1.0) * omega_pow(d, (d - i) / 2.0);
        s.S(i, d - 1 - i) = 1.0;
        s.M1(i, i) = omega_pow(d, i / 4.0);
        s.M2(i, i) = omega_pow(d, i / 2.0);
    }
    return s;
}

WPair w1_w2(int d) {
    const StructuralUnitaries s = structural_unitaries(d);
    return {s.M1.adjoint() * s.F * s.Y.adjoint(), s.S * s.M2.adjoint() * s.F * s.Y.adjoint()};
}

ComplexMatrix w_alice(int d) {
    const WPair w = w1_w2(d);
    return w.W2.transpose() * w.W1;
}

Realization ideal_realization(int d) {
    Realization r;
    r.d = d;
    r.state = maximally_entangled(d);
    r.A = ideal_alice_observables(d);
    r.B = {z_observable(d), t_observable(d)};
    return r;
}

Realization cglmp_realization(int d) {
    const CglmpObservables obs = cglmp_observables(d);
    Realization r;
    r.d = d;
    r.state = maximally_entangled(d);
    r.A = obs.A;
    r.B = obs.B;
    return r;
}

CheckList check_cglmp_relations(int d, double tol) {
    const ComplexMatrix z = z_observable(d);
    const ComplexMatrix t = t_observable(d);
    const CglmpObservables obs = cglmp_observables(d);
    const WPair w = w1_w2(d);
    CheckList out;
    out.add("W1 Z W1^dag = A1'", frobenius_distance(w.W1 * z * w.W1.adjoint(), obs.A[0]), tol);
    out.add("W1 T W1^dag = A2'", frobenius_distance(w.W1 * t * w.W1.adjoint(), obs.A[1]), tol);
    out.add("W2 Z W2^dag = B1'", frobenius_distance(w.W2 * z * w.W2.adjoint(), obs.B[0]), tol);
    out.add("W2 T W2^dag = B2'", frobenius_distance(w.W2 * t * w.W2.adjoint(), obs.B[1]), tol);

    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    constexpr double pi = std::numbers::pi;
    for (int r = 0; r < d; ++r) {
        StateVector e = StateVector::Zero(d);
        e(r) = 1.0;
        const StateVector tr = t_eigenvector(d, r);
        const double delta = r == 0 ? 1.0 : 0.0;
        const Complex pa1 = -std::polar(1.0, pi * (1.0 - delta - static_cast<double>(r) / d));
        const Complex pb1 = std::polar(1.0, pi * (1.0 + static_cast<double>(r - 1) / d - delta));
        a1 = std::max(a1, (w.W1.adjoint() * cglmp_eigenvector_a(d, 1, r) - pa1 * e).norm());
        a2 = std::max(a2, (w.W1.adjoint() * cglmp_eigenvector_a(d, 2, r) - tr).norm());
        b1 = std::max(b1, (w.W2.adjoint() * cglmp_eigenvector_b(d, 1, r) - pb1 * e).norm());
        b2 = std::max(b2, (w.W2.adjoint() * cglmp_eigenvector_b(d, 2, r) - omega_pow(d, r - 1) * tr).norm());
    }
    out.add("W1^dag |r>_A1 phase", a1, tol);
    out.add("W1^dag |r>_A2 = |r>_T", a2, tol);
    out.add("W2^dag |r>_B1 phase", b1, tol);
    out.add("W2^dag |r>_B2 = w^{r-1} |r>_T", b2, tol);
    return out;
}

CheckList check_alice_relations(int d, double tol) {
    const ComplexMatrix z = z_observable(d);
    const ComplexMatrix t = t_observable(d);
    const ComplexMatrix wa = w_alice(d);
    const auto ideal = ideal_alice_observables(d);
    const ComplexMatrix x = wa * z * wa.adjoint();
    const ComplexMatrix y = wa * t * wa.adjoint();
    const Complex a1 = coefficient_a(d, 1);
    CheckList out;
    out.add("W_A unitary", unitarity_residual(wa), tol);
    out.add("W_A Z W_A^dag = A1", frobenius_distance(x, ideal[0]), tol);
    out.add("W_A T W_A^dag = A2", frobenius_distance(y, ideal[1]), tol);
    out.add("Z = a1 X + a1* Y", frobenius_distance(z, a1 * x + std::conj(a1) * y), tol);
    out.add("T = a1* w X + a1 Y",
            frobenius_distance(t, std::conj(a1) * omega_pow(d, 1) * x + a1 * y), tol);
    return out;
}

}  // namespace qsk
