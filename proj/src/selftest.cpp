#include "qsk/selftest.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qsk/canonical.hpp"
#include "qsk/random.hpp"
#include "qsk/satwap.hpp"
#include "qsk/sos.hpp"

namespace qsk {

Eigen::Index check_multiplicities(const ComplexMatrix& b, int d, const Tolerances& tol) {
    EigenDecomposition eig;
    try {
        eig = eig_unitary(b, d, tol);
    } catch (const ObservableError& e) {
        throw ExtractionError("multiplicities", e.what());
    }
    const std::vector<int> mult = eig.multiplicities();
    for (int j = 1; j < d; ++j) {
        if (mult[static_cast<std::size_t>(j)] != mult[0]) {
            std::ostringstream msg;
            msg << "eigenvalue multiplicities differ (w^0 x" << mult[0] << ", w^" << j << " x"
                << mult[static_cast<std::size_t>(j)] << "); not a maximal violator";
            throw ExtractionError("multiplicities", msg.str());
        }
    }
    return mult[0];
}

ComplexMatrix align_first_observable(const ComplexMatrix& b1, int d, const Tolerances& tol) {
    (void)check_multiplicities(b1, d, tol);
    return eig_unitary(b1, d, tol).eigenvectors.adjoint();
}

ComplexMatrix extract_bob(const ComplexMatrix& b1, const ComplexMatrix& b2, int d, double tol_block,
                          const Tolerances& tol) {
    if (b1.rows() != b2.rows() || b1.cols() != b2.cols()) {
        throw ExtractionError("bob_extraction", "observables act on different spaces");
    }
    const Eigen::Index m = check_multiplicities(b1, d, tol);
    const ComplexMatrix v = align_first_observable(b1, d, tol);
    const ComplexMatrix b2t = v * b2 * v.adjoint();
    const Eigen::Index n = b1.rows();
    const ComplexMatrix eye = identity(m);

    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    u.topLeftCorner(m, m) = eye;
    for (int i = 1; i < d; ++i) {
        const ComplexMatrix ui = (d / 2.0) * omega_pow(d, -(i + 1) / 2.0) * block(b2t, 0, i, m);
        const double res = frobenius_distance(ui * ui.adjoint(), eye);
        if (!(res <= tol_block)) {
            std::ostringstream msg;
            msg << "F_0" << i << " F_0" << i << "^dag differs from (4/d^2) I (residual " << res / (d * d / 4.0)
                << "); realization does not maximally violate";
            throw ExtractionError("bob_extraction", msg.str());
        }
        u.block(i * m, i * m, m, m) = ui;
    }
    return u * v;
}

ComplexMatrix extract_alice(const ComplexMatrix& a1, const ComplexMatrix& a2, int d, double tol_block,
                            const Tolerances& tol) {
    COperatorSet cbar;
    try {
        cbar = cbar_operators(a1, a2, d, tol);
    } catch (const std::exception& e) {
        throw ExtractionError("alice_extraction", e.what());
    }
    try {
        return conj(extract_bob(conj(cbar.at(1, 1)), conj(cbar.at(2, 1)), d, tol_block, tol));
    } catch (const ExtractionError& e) {
        throw ExtractionError("alice_extraction", std::string("combinations Cbar_i^(1): ") + e.what());
    }
}

StateCanonicalization canonicalize_state(const Realization& r, const ComplexMatrix& u_a, const ComplexMatrix& u_b) {
    const int d = r.d;
    const Eigen::Index da = r.dim_a();
    const Eigen::Index db = r.dim_b();
    if (u_a.rows() != da || u_b.rows() != db || da % d != 0 || db % d != 0) {
        throw std::invalid_argument("canonicalize_state: unitaries do not match the realization");
    }
    const Eigen::Index ma = da / d;
    const Eigen::Index mb = db / d;
    const StateVector psi = apply_local(r.state, u_a, u_b);

    // psi_ij(a', b') = psi[(i ma + a') db + j mb + b'].
    auto component = [&](int i, int j) {
        StateVector out(ma * mb);
        for (Eigen::Index a = 0; a < ma; ++a) {
            for (Eigen::Index b = 0; b < mb; ++b) {
                out(a * mb + b) = psi((i * ma + a) * db + j * mb + b);
            }
        }
        return out;
    };

    StateCanonicalization out;
    const StateVector p00 = component(0, 0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const StateVector pij = component(i, j);
            if (i == j) {
                out.max_diagonal_spread = std::max(out.max_diagonal_spread, (pij - p00).norm());
            } else {
                out.max_off_diagonal = std::max(out.max_off_diagonal, pij.norm());
            }
        }
    }
    const double n00 = p00.norm();
    if (n00 == 0.0) {
        out.aux_state = StateVector::Zero(ma * mb);
        out.fidelity = 0.0;
        return out;
    }
    out.aux_state = p00 / n00;
    Complex overlap{};
    for (int i = 0; i < d; ++i) {
        overlap += out.aux_state.dot(component(i, i));
    }
    out.fidelity = std::abs(overlap) / std::sqrt(static_cast<double>(d));
    return out;
}

Realization apply_local_unitaries(const Realization& r, const ComplexMatrix& u_a, const ComplexMatrix& u_b) {
    Realization out;
    out.d = r.d;
    out.state = apply_local(r.state, u_a, u_b);
    for (std::size_t x = 0; x < 2; ++x) {
        out.A[x] = u_a * r.A[x] * u_a.adjoint();
        out.B[x] = u_b * r.B[x] * u_b.adjoint();
    }
    return out;
}

namespace {

Eigen::Index numerical_rank(const ComplexMatrix& rho) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > 1e-12) {
            ++rank;
        }
    }
    return rank;
}

std::string format_residual(const std::string& what, double v) {
    std::ostringstream s;
    s << what << " " << v;
    return s.str();
}

}  // namespace

ExtractionResult extract(const Realization& r, const ExtractionOptions& options) {
    ExtractionResult res;
    res.d = r.d;
    auto& log = res.log;
    auto fail = [&log](const std::string& stage, const std::string& message) -> ExtractionError {
        log.push_back({stage, false, message});
        return ExtractionError(stage, message, log);
    };

    try {
        r.validate(options.tol);
    } catch (const std::exception& e) {
        throw fail("input", e.what());
    }
    const int d = r.d;
    const double tol_x = options.tol_extract(d);

    try {
        res.bell_value = satwap_value(r, options.tol);
    } catch (const std::exception& e) {
        throw fail("violation_gate", e.what());
    }
    const double gap = std::abs(res.bell_value - quantum_bound(d));
    if (!(gap <= options.tol_violation(d))) {
        std::ostringstream msg;
        msg << "SATWAP value " << res.bell_value << " is " << gap << " away from the quantum bound "
            << quantum_bound(d) << " (allowed " << options.tol_violation(d) << ")";
        throw fail("violation_gate", msg.str());
    }
    log.push_back({"violation_gate", true, format_residual("|I - beta_Q| =", gap)});

    const double tol_trace = 1e-8 * options.tol_scale;
    const std::array<std::pair<const char*, const ComplexMatrix*>, 4> observables{
        {{"A1", &r.A[0]}, {"A2", &r.A[1]}, {"B1", &r.B[0]}, {"B2", &r.B[1]}}};
    for (const auto& [name, m] : observables) {
        const TraceReport tr = check_trace_conditions(*m, d, tol_trace, options.tol);
        if (!tr.pass) {
            std::ostringstream msg;
            msg << "Tr(" << name << "^" << *tr.witness << ") is nonzero; eigenvalue multiplicities cannot be equal";
            throw fail("trace_conditions", msg.str());
        }
    }
    log.push_back({"trace_conditions", true, "Tr(X^n) = 0 for every proper divisor n"});

    Eigen::Index ma = 0;
    Eigen::Index mb = 0;
    try {
        mb = check_multiplicities(r.B[0], d, options.tol);
        ma = check_multiplicities(r.A[0], d, options.tol);
        if (check_multiplicities(r.B[1], d, options.tol) != mb || check_multiplicities(r.A[1], d, options.tol) != ma) {
            throw ExtractionError("multiplicities", "the two observables of a party have different multiplicities");
        }
    } catch (const ExtractionError& e) {
        throw fail("multiplicities", e.what());
    }
    res.aux_a = ma;
    res.aux_b = mb;
    log.push_back({"multiplicities", true, "aux dims " + std::to_string(ma) + " x " + std::to_string(mb)});

    const Eigen::Index rank_a = numerical_rank(partial_trace(r.state, r.dim_a(), r.dim_b(), Side::A));
    const Eigen::Index rank_b = numerical_rank(partial_trace(r.state, r.dim_a(), r.dim_b(), Side::B));
    const bool full_rank = rank_a == r.dim_a() && rank_b == r.dim_b();
    log.push_back({"reduced_state_rank", full_rank,
                   "ranks " + std::to_string(rank_a) + "/" + std::to_string(r.dim_a()) + ", " +
                       std::to_string(rank_b) + "/" + std::to_string(r.dim_b())});

    try {
        res.U_B = extract_bob(r.B[0], r.B[1], d, tol_x, options.tol);
    } catch (const ExtractionError& e) {
        throw fail("bob_extraction", e.what());
    }
    const ComplexMatrix z = z_observable(d);
    const ComplexMatrix t = t_observable(d);
    const ComplexMatrix ib = identity(mb);
    const double rb1 = frobenius_distance(res.U_B * r.B[0] * res.U_B.adjoint(), kron(z, ib));
    const double rb2 = frobenius_distance(res.U_B * r.B[1] * res.U_B.adjoint(), kron(t, ib));
    if (!(rb1 <= tol_x && rb2 <= tol_x)) {
        std::ostringstream msg;
        msg << "U_B B2 U_B^dag differs from T_d (x) I by " << rb2;
        throw fail("bob_extraction", msg.str());
    }
    log.push_back({"bob_extraction", true, format_residual("max residual", std::max(rb1, rb2))});

    try {
        res.U_A = extract_alice(r.A[0], r.A[1], d, tol_x, options.tol);
    } catch (const ExtractionError& e) {
        throw fail("alice_extraction", e.what());
    }
    const auto ideal = ideal_alice_observables(d);
    const ComplexMatrix ia = identity(ma);
    const double ra1 = frobenius_distance(res.U_A * r.A[0] * res.U_A.adjoint(), kron(ideal[0], ia));
    const double ra2 = frobenius_distance(res.U_A * r.A[1] * res.U_A.adjoint(), kron(ideal[1], ia));
    if (!(ra1 <= tol_x && ra2 <= tol_x)) {
        std::ostringstream msg;
        msg << "U_A A_i U_A^dag differs from the ideal observables by " << std::max(ra1, ra2);
        throw fail("alice_extraction", msg.str());
    }
    log.push_back({"alice_extraction", true, format_residual("max residual", std::max(ra1, ra2))});

    // Independent route: treat (A1, A2) like Bob's pair, then rotate by W_A.
    double wa1 = std::numeric_limits<double>::infinity();
    double wa2 = wa1;
    try {
        const ComplexMatrix u = kron(w_alice(d), ia) * extract_bob(r.A[0], r.A[1], d, tol_x, options.tol);
        wa1 = frobenius_distance(u * r.A[0] * u.adjoint(), kron(ideal[0], ia));
        wa2 = frobenius_distance(u * r.A[1] * u.adjoint(), kron(ideal[1], ia));
        log.push_back({"alice_w_route", true, format_residual("max residual", std::max(wa1, wa2))});
    } catch (const ExtractionError& e) {
        log.push_back({"alice_w_route", false, e.what()});
    }

    const StateCanonicalization sc = canonicalize_state(r, res.U_A, res.U_B);
    res.fidelity = sc.fidelity;
    res.aux_state = sc.aux_state;
    const bool state_ok = sc.max_off_diagonal <= tol_x && sc.max_diagonal_spread <= tol_x;
    log.push_back({"state", state_ok,
                   format_residual("fidelity", sc.fidelity) + format_residual(", off-diagonal", sc.max_off_diagonal) +
                       format_residual(", diagonal spread", sc.max_diagonal_spread)});

    const Realization canonical = apply_local_unitaries(r, res.U_A, res.U_B);
    const CorrelatorTensor before = correlators_from_realization(r, options.tol);
    const double drift = correlators_from_realization(canonical, options.tol).max_abs_difference(before);
    const double vs_ideal = correlators_from_realization(ideal_realization(d), options.tol).max_abs_difference(before);

    auto& chk = res.residuals;
    chk.add("U_A unitary", unitarity_residual(res.U_A), options.tol.unitary * options.tol_scale);
    chk.add("U_B unitary", unitarity_residual(res.U_B), options.tol.unitary * options.tol_scale);
    chk.add("U_B B1 U_B^dag = Z_d (x) I", rb1, tol_x);
    chk.add("U_B B2 U_B^dag = T_d (x) I", rb2, tol_x);
    chk.add("U_A A1 U_A^dag = A1_ideal (x) I", ra1, tol_x);
    chk.add("U_A A2 U_A^dag = A2_ideal (x) I", ra2, tol_x);
    chk.add("W_A route A1", wa1, tol_x);
    chk.add("W_A route A2", wa2, tol_x);
    chk.add("state off-diagonal blocks", sc.max_off_diagonal, tol_x);
    chk.add("state diagonal blocks equal", sc.max_diagonal_spread, tol_x);
    chk.add("1 - fidelity", 1.0 - sc.fidelity, tol_x);
    chk.add("correlations preserved", drift, tol_x);
    chk.add("correlations equal ideal", vs_ideal, tol_x);
    return res;
}

ScrambledRealization scramble_with_witness(const Realization& r, Eigen::Index aux_a, Eigen::Index aux_b,
                                           std::uint64_t seed) {
    r.validate();
    if (aux_a < 1 || aux_b < 1) {
        throw std::invalid_argument("scramble: aux dimensions must be positive");
    }
    CounterRng rng(seed, 0);
    ScrambledRealization out;
    out.aux_state = random_state(aux_a * aux_b, rng);
    const Eigen::Index da = r.dim_a() * aux_a;
    const Eigen::Index db = r.dim_b() * aux_b;
    out.G_A = haar_unitary(da, rng);
    out.G_B = haar_unitary(db, rng);

    StateVector embedded = StateVector::Zero(da * db);
    for (Eigen::Index ia = 0; ia < r.dim_a(); ++ia) {
        for (Eigen::Index ib = 0; ib < r.dim_b(); ++ib) {
            const Complex amp = r.state(ia * r.dim_b() + ib);
            for (Eigen::Index a = 0; a < aux_a; ++a) {
                for (Eigen::Index b = 0; b < aux_b; ++b) {
                    embedded((ia * aux_a + a) * db + ib * aux_b + b) = amp * out.aux_state(a * aux_b + b);
                }
            }
        }
    }
    Realization lifted;
    lifted.d = r.d;
    lifted.state = embedded;
    for (std::size_t x = 0; x < 2; ++x) {
        lifted.A[x] = kron(r.A[x], identity(aux_a));
        lifted.B[x] = kron(r.B[x], identity(aux_b));
    }
    out.realization = apply_local_unitaries(lifted, out.G_A, out.G_B);

    const double drift =
        correlators_from_realization(out.realization).max_abs_difference(correlators_from_realization(r));
    if (!(drift <= 1e-9)) {
        std::ostringstream msg;
        msg << "scramble changed the correlations by " << drift;
        throw std::logic_error(msg.str());
    }
    return out;
}

Realization scramble(const Realization& r, Eigen::Index aux_a, Eigen::Index aux_b, std::uint64_t seed) {
    return scramble_with_witness(r, aux_a, aux_b, seed).realization;
}

}  // namespace qsk
