#include "qsk/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsk/canonical.hpp"

namespace qsk {

GuessingProbability ideal_guessing_probability(const Realization& r, Side party, int setting,
                                               const ExtractionOptions& options) {
    if (setting != 0 && setting != 1) {
        throw std::invalid_argument("ideal_guessing_probability: setting must be 0 or 1");
    }
    ExtractionResult ex;
    try {
        ex = extract(r, options);
    } catch (const ExtractionError& e) {
        throw std::domain_error(std::string("refusing to bound the guessing probability: ") + e.what());
    }
    if (!ex.success()) {
        throw std::domain_error("refusing to bound the guessing probability: extraction residuals out of tolerance");
    }
    const int d = r.d;
    const StateVector psi = apply_local(r.state, ex.U_A, ex.U_B);
    const auto s = static_cast<std::size_t>(setting);
    const ComplexMatrix local = party == Side::A ? ideal_alice_observables(d)[s]
                                                 : (setting == 0 ? z_observable(d) : t_observable(d));
    const EigenDecomposition eig = eig_unitary(local, d, options.tol);

    GuessingProbability out;
    for (int b = 0; b < d; ++b) {
        const ComplexMatrix proj = eig.projector(b);
        const double p = party == Side::A
                             ? expectation(psi, kron(proj, identity(ex.aux_a)), identity(r.dim_b())).real()
                             : expectation(psi, identity(r.dim_a()), kron(proj, identity(ex.aux_b))).real();
        out.distribution.push_back(p);
    }
    out.value = *std::max_element(out.distribution.begin(), out.distribution.end());
    return out;
}

double certified_bits(int d) {
    if (d < 2) {
        throw std::invalid_argument("certified_bits: d must be at least 2");
    }
    return std::log2(static_cast<double>(d));
}

RandomnessReport expansion_ledger(int d, std::uint64_t rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("expansion_ledger: rounds must be at least 1");
    }
    const GuessingProbability g = ideal_guessing_probability(ideal_realization(d), Side::B, 0);
    RandomnessReport out;
    out.d = d;
    out.rounds = rounds;
    out.distribution = g.distribution;
    out.guessing_probability = g.value;
    out.certified_bits = -std::log2(g.value);
    out.input_bits = static_cast<double>(rounds);
    out.output_bits = static_cast<double>(rounds) * out.certified_bits;
    out.expansion_ratio = out.output_bits / out.input_bits;
    return out;
}

}  // namespace qsk
