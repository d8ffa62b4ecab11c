#include "qsk/sos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsk/canonical.hpp"
#include "qsk/cyclotomic.hpp"
#include "qsk/satwap.hpp"

namespace qsk {

namespace {

// X^0 .. X^{d-1}; integer powers are read modulo d.
class PowerTable {
public:
    PowerTable(const ComplexMatrix& x, int d, const Tolerances& tol) : d_(d) {
        if (x.rows() != x.cols()) {
            throw std::invalid_argument("power table: matrix is not square");
        }
        if (!is_unitary(x, tol.snap)) {
            throw ObservableError("power table: matrix is not unitary");
        }
        pow_.reserve(static_cast<std::size_t>(d));
        pow_.push_back(identity(x.rows()));
        for (int k = 1; k < d; ++k) {
            pow_.push_back(pow_.back() * x);
        }
    }

    [[nodiscard]] const ComplexMatrix& operator()(long long k) const {
        const long long r = ((k % d_) + d_) % d_;
        return pow_[static_cast<std::size_t>(r)];
    }

private:
    int d_;
    std::vector<ComplexMatrix> pow_;
};

void require_pair(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
        throw std::invalid_argument("observable pair must be square matrices of equal size");
    }
}

}  // namespace

const ComplexMatrix& COperatorSet::at(int i, int k) const {
    if (i < 1 || i > 2 || k < 1 || k >= d) {
        throw std::out_of_range("COperatorSet::at: index out of range");
    }
    return ops[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
}

double COperatorSet::adjoint_symmetry_error() const {
    double worst = 0.0;
    for (int i = 1; i <= 2; ++i) {
        for (int k = 1; k < d; ++k) {
            worst = std::max(worst, frobenius_distance(at(i, d - k), at(i, k).adjoint()));
        }
    }
    return worst;
}

COperatorSet c_operators(const ComplexMatrix& b1, const ComplexMatrix& b2, int d, const Tolerances& tol) {
    require_pair(b1, b2);
    const PowerTable p1(b1, d, tol);
    const PowerTable p2(b2, d, tol);
    COperatorSet c;
    c.d = d;
    c.side = CombinationSide::Bob;
    for (int k = 1; k < d; ++k) {
        const Complex ak = coefficient_a(d, k);
        c.ops[0].push_back(ak * p1(-k) + std::conj(ak) * omega_pow(d, k) * p2(-k));
        c.ops[1].push_back(std::conj(ak) * p1(-k) + ak * p2(-k));
    }
    return c;
}

COperatorSet cbar_operators(const ComplexMatrix& a1, const ComplexMatrix& a2, int d, const Tolerances& tol) {
    require_pair(a1, a2);
    const PowerTable p1(a1, d, tol);
    const PowerTable p2(a2, d, tol);
    COperatorSet c;
    c.d = d;
    c.side = CombinationSide::Alice;
    for (int k = 1; k < d; ++k) {
        const Complex ak = coefficient_a(d, k);
        c.ops[0].push_back(std::conj(ak) * p1(-k) + ak * p2(-k));
        c.ops[1].push_back(omega_pow(d, -k) * ak * p1(-k) + std::conj(ak) * p2(-k));
    }
    return c;
}

CheckList check_c_relations(const COperatorSet& c, double tol) {
    CheckList out;
    const Eigen::Index n = c.at(1, 1).rows();
    for (int i = 1; i <= 2; ++i) {
        double power = 0.0;
        double inverse = 0.0;
        ComplexMatrix running = identity(n);
        for (int k = 1; k < c.d; ++k) {
            running = running * c.at(i, 1);
            power = std::max(power, frobenius_distance(c.at(i, k), running));
            inverse = std::max(inverse, frobenius_distance(c.at(i, c.d - k) * c.at(i, k), identity(n)));
        }
        const std::string tag = std::to_string(i);
        out.add("C" + tag + "^(k) = (C" + tag + "^(1))^k", power, tol);
        out.add("C" + tag + "^(d-k) C" + tag + "^(k) = I", inverse, tol);
    }
    out.add("C_i^(d-k) = (C_i^(k))^dag", c.adjoint_symmetry_error(), tol);
    return out;
}

double SosResidual::max_stabilizer() const {
    return stabilizers.empty() ? 0.0 : *std::max_element(stabilizers.begin(), stabilizers.end());
}

namespace {

enum class Arrangement { CombinationOnB, CombinationOnA };

SosResidual sos_residual(const Realization& r, const COperatorSet& c, const std::array<ComplexMatrix, 2>& other,
                         Arrangement arrangement, const Tolerances& tol) {
    const int d = r.d;
    const Eigen::Index n = r.dim_a() * r.dim_b();
    ComplexMatrix rhs = ComplexMatrix::Zero(n, n);
    SosResidual out;
    for (int i = 1; i <= 2; ++i) {
        const PowerTable p(other[static_cast<std::size_t>(i - 1)], d, tol);
        for (int k = 1; k < d; ++k) {
            const ComplexMatrix& ck = c.at(i, k);
            const ComplexMatrix x = arrangement == Arrangement::CombinationOnB ? kron(p(k), ck) : kron(ck, p(k));
            const ComplexMatrix pk = identity(n) - x;
            rhs += 0.5 * (pk.adjoint() * pk);
            const StateVector image = arrangement == Arrangement::CombinationOnB
                                          ? apply_local(r.state, p(k), ck)
                                          : apply_local(r.state, ck, p(k));
            out.stabilizers.push_back((r.state - image).norm());
        }
    }
    const ComplexMatrix lhs = quantum_bound(d) * identity(n) - bell_operator(satwap_functional(d), r, tol);
    out.operator_identity = frobenius_distance(lhs, rhs);
    return out;
}

}  // namespace

SosResidual sos_residual_bob(const Realization& r, const Tolerances& tol) {
    r.validate(tol);
    return sos_residual(r, c_operators(r.B[0], r.B[1], r.d, tol), r.A, Arrangement::CombinationOnB, tol);
}

SosResidual sos_residual_alice(const Realization& r, const Tolerances& tol) {
    r.validate(tol);
    return sos_residual(r, cbar_operators(r.A[0], r.A[1], r.d, tol), r.B, Arrangement::CombinationOnA, tol);
}

double commutation_residual(const ComplexMatrix& b1, const ComplexMatrix& b2, int d, int k, const Tolerances& tol) {
    require_pair(b1, b2);
    const PowerTable p1(b1, d, tol);
    const PowerTable p2(b2, d, tol);
    const ComplexMatrix lhs = p1(k) * p2(-k);
    const ComplexMatrix rhs = omega_pow(d, -(((k % d) + d) % d)) * p2(k) * p1(-k);
    return frobenius_distance(lhs, rhs);
}

double check_commutation_relation(const ComplexMatrix& b1, const ComplexMatrix& b2, int d, const Tolerances& tol) {
    double worst = 0.0;
    for (int k = 1; k < d; ++k) {
        worst = std::max(worst, commutation_residual(b1, b2, d, k, tol));
    }
    return worst;
}

TraceReport check_trace_conditions(const ComplexMatrix& b, int d, double tol, const Tolerances& num) {
    const PowerTable p(b, d, num);
    TraceReport out;
    out.tolerance = tol;
    for (const int n : proper_divisors(d)) {
        const double v = std::abs(p(n).trace());
        out.entries.emplace_back(n, v);
        if (!(v <= tol) && !out.witness) {
            out.witness = n;
        }
    }
    out.pass = !out.witness.has_value();
    return out;
}

CheckList check_intermediate_identities(const ComplexMatrix& b1, const ComplexMatrix& b2, int d, int s_max,
                                        double tol, const Tolerances& num) {
    require_pair(b1, b2);
    const PowerTable p1(b1, d, num);
    const PowerTable p2(b2, d, num);
    double id1 = 0.0;
    double id2 = 0.0;
    for (int s = 0; s <= s_max; ++s) {
        for (int x = 0; x < d; ++x) {
            const long long lx = x;
            const Complex lhs1 = p1(lx).trace();
            const Complex rhs1 = omega_pow(d, (s * x) % d) * (p1((2 * s + 1) * lx) * p2(-2 * s * lx)).trace();
            id1 = std::max(id1, std::abs(lhs1 - rhs1));
            const Complex lhs2 = p2(lx).trace();
            const Complex rhs2 = omega_pow(d, (s * x) % d) * (p1(2 * s * lx) * p2((1 - 2 * s) * lx)).trace();
            id2 = std::max(id2, std::abs(lhs2 - rhs2));
        }
    }
    double traces = 0.0;
    for (int x = 1; x <= d / 2; ++x) {
        traces = std::max(traces, std::abs(p1(x).trace() - omega_pow(d, -x / 2.0) * p2(x).trace()));
    }
    double bb = 0.0;
    for (int x = 0; x < d; ++x) {
        bb = std::max(bb, std::abs((p1(-x) * p2(2LL * x)).trace() - omega_pow(d, x) * p1(x).trace()));
    }
    CheckList out;
    out.add("Tr(B1^x) = w^{sx} Tr(B1^{(2s+1)x} B2^{-2sx})", id1, tol);
    out.add("Tr(B2^y) = w^{sy} Tr(B1^{2sy} B2^{(1-2s)y})", id2, tol);
    out.add("Tr(B1^x) = w^{-x/2} Tr(B2^x)", traces, tol);
    out.add("Tr(B1^{-x} B2^{2x}) = w^x Tr(B1^x)", bb, tol);
    return out;
}

CheckList check_root_identities(int d, double tol) {
    if (d < 2) {
        throw std::invalid_argument("check_root_identities: d must be at least 2");
    }
    double first = 0.0;
    for (int k = 1; k < d; ++k) {
        for (int i = 0; i < d; ++i) {
            Complex sum{};
            for (int j = 0; j < d; ++j) {
                if (j != i) {
                    sum += (1.0 - omega_pow(d, k * (j - i))) / (1.0 - omega_pow(d, i - j));
                }
            }
            first = std::max(first, std::abs(sum - static_cast<double>(k)));
        }
    }
    double second = 0.0;
    for (int n = 1; n < d; ++n) {
        Complex sum{};
        for (int k = 0; k < d; ++k) {
            sum += static_cast<double>(k) * omega_pow(d, (k * n) % d);
        }
        second = std::max(second, std::abs(sum - static_cast<double>(d) / (omega_pow(d, n) - 1.0)));
    }
    CheckList out;
    out.add("sum_{j!=i} (1 - w^{k(j-i)})/(1 - w^{i-j}) = k", first, tol);
    out.add("sum_k k w^{kn} = d/(w^n - 1)", second, tol);
    return out;
}

ComplexMatrix block(const ComplexMatrix& m, Eigen::Index i, Eigen::Index j, Eigen::Index size) {
    return m.block(i * size, j * size, size, size);
}

CheckList check_fij_structure(const ComplexMatrix& b2, int d, Eigen::Index aux_dim, double tol,
                              const Tolerances& num) {
    if (aux_dim < 1 || b2.rows() != d * aux_dim || b2.cols() != d * aux_dim) {
        std::ostringstream msg;
        msg << "check_fij_structure: expected a " << d * aux_dim << "-dimensional operator, got " << b2.rows()
            << "x" << b2.cols();
        throw std::invalid_argument(msg.str());
    }
    const Eigen::Index m = aux_dim;
    const ComplexMatrix eye = identity(m);
    const ComplexMatrix b1 = kron(z_observable(d), eye);
    const PowerTable p1(b1, d, num);

    // B2^k = -(k-1) w^{k/2} B1^k + w^{(k-1)/2} sum_{m<k} B1^m B2 B1^{k-1-m}, k = 1..d.
    double induction = 0.0;
    ComplexMatrix b2k = identity(b2.rows());
    for (int k = 1; k <= d; ++k) {
        b2k = b2k * b2;
        ComplexMatrix sum = ComplexMatrix::Zero(b2.rows(), b2.cols());
        for (int j = 0; j < k; ++j) {
            sum += p1(j) * b2 * p1(k - 1 - j);
        }
        const ComplexMatrix rhs = -static_cast<double>(k - 1) * omega_pow(d, k / 2.0) * p1(k) +
                                  omega_pow(d, (k - 1) / 2.0) * sum;
        induction = std::max(induction, frobenius_distance(b2k, rhs));
    }

    double diagonal = 0.0;
    double symmetric = 0.0;
    double modulus = 0.0;
    double first_row = 0.0;
    double off_diagonal = 0.0;
    for (int i = 0; i < d; ++i) {
        const ComplexMatrix fii = block(b2, i, i, m);
        diagonal = std::max(diagonal, frobenius_distance(fii, ((d - 2.0) / d) * omega_pow(d, i + 0.5) * eye));
        for (int j = 0; j < d; ++j) {
            if (i == j) {
                continue;
            }
            const ComplexMatrix fij = block(b2, i, j, m);
            symmetric = std::max(symmetric,
                                 frobenius_distance(fij, omega_pow(d, i + j + 1) * block(b2, j, i, m).adjoint()));
            modulus = std::max(modulus, frobenius_distance(fij * fij.adjoint(), (4.0 / (d * d)) * eye));
            if (i == 0) {
                first_row = std::max(first_row,
                                     frobenius_distance(fij, (2.0 / d) * omega_pow(d, (j + 1) / 2.0) * eye));
            } else if (j != 0) {
                off_diagonal = std::max(
                    off_diagonal, frobenius_distance(fij, -(2.0 / d) * omega_pow(d, (i + j + 1) / 2.0) * eye));
            }
        }
    }
    CheckList out;
    out.add("B2^k expansion in B1 powers", induction, tol);
    out.add("F_ii = ((d-2)/d) w^{i+1/2} I", diagonal, tol);
    out.add("F_ij = w^{i+j+1} F_ji^dag", symmetric, tol);
    out.add("F_ij F_ij^dag = (4/d^2) I", modulus, tol);
    out.add("F_0j = (2/d) w^{(j+1)/2} I", first_row, tol);
    out.add("F_ij = -(2/d) w^{(i+j+1)/2} I (i,j >= 1)", off_diagonal, tol);
    return out;
}

}  // namespace qsk
