#include "qsk/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qsk/parallel.hpp"
#include "qsk/random.hpp"

namespace qsk {

void Scenario::validate() const {
    if (d < 2 || m < 2) {
        throw std::invalid_argument("scenario requires d >= 2 and m >= 2");
    }
}

CorrelationTensor::CorrelationTensor(Scenario s) : scenario_(s) {
    s.validate();
    p_.assign(s.settings() * static_cast<std::size_t>(s.d * s.d), 0.0);
}

double CorrelationTensor::normalization_error() const {
    double worst = 0.0;
    const int d = scenario_.d;
    for (int x = 0; x < scenario_.m; ++x) {
        for (int y = 0; y < scenario_.m; ++y) {
            double total = 0.0;
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    const double v = (*this)(x, y, a, b);
                    worst = std::max(worst, -v);
                    total += v;
                }
            }
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    return worst;
}

void CorrelationTensor::validate(double tol) const {
    const double err = normalization_error();
    if (err > tol) {
        std::ostringstream msg;
        msg << "correlation tensor is not a set of probability distributions (error " << err << ")";
        throw std::invalid_argument(msg.str());
    }
}

double CorrelationTensor::max_abs_difference(const CorrelationTensor& other) const {
    if (!(scenario_ == other.scenario_)) {
        throw std::invalid_argument("correlation tensors from different scenarios");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        worst = std::max(worst, std::abs(p_[i] - other.p_[i]));
    }
    return worst;
}

CorrelatorTensor::CorrelatorTensor(Scenario s) : scenario_(s) {
    s.validate();
    v_.assign(s.settings() * static_cast<std::size_t>(s.d * s.d), Complex{});
}

double CorrelatorTensor::symmetry_error() const {
    const int d = scenario_.d;
    double worst = 0.0;
    for (int x = 0; x < scenario_.m; ++x) {
        for (int y = 0; y < scenario_.m; ++y) {
            worst = std::max(worst, std::abs((*this)(x, y, 0, 0) - 1.0));
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    const Complex mirrored = (*this)(x, y, (d - k) % d, (d - l) % d);
                    worst = std::max(worst, std::abs(mirrored - std::conj((*this)(x, y, k, l))));
                }
            }
        }
    }
    return worst;
}

double CorrelatorTensor::max_abs_difference(const CorrelatorTensor& other) const {
    if (!(scenario_ == other.scenario_)) {
        throw std::invalid_argument("correlator tensors from different scenarios");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        worst = std::max(worst, std::abs(v_[i] - other.v_[i]));
    }
    return worst;
}

void Realization::validate(const Tolerances& tol) const {
    if (d < 2) {
        throw std::invalid_argument("realization requires d >= 2");
    }
    for (const auto* pair : {&A, &B}) {
        for (const auto& m : *pair) {
            if (m.rows() == 0 || m.rows() != m.cols()) {
                throw std::invalid_argument("observables must be non-empty square matrices");
            }
        }
    }
    if (A[0].rows() != A[1].rows() || B[0].rows() != B[1].rows()) {
        throw std::invalid_argument("both observables of a party must act on the same space");
    }
    if (state.size() != dim_a() * dim_b()) {
        throw std::invalid_argument("state dimension does not match dimA * dimB");
    }
    if (std::abs(state.norm() - 1.0) > tol.norm) {
        throw std::invalid_argument("state is not normalized");
    }
    for (const auto* pair : {&A, &B}) {
        for (const auto& m : *pair) {
            (void)eig_unitary(m, d, tol);
        }
    }
}

double ProbabilityFunctional::evaluate(const CorrelationTensor& p) const {
    if (!(p.scenario() == scenario())) {
        throw std::invalid_argument("functional and tensor from different scenarios");
    }
    double total = 0.0;
    const auto& t = coefficients_.values();
    const auto& v = p.values();
    for (std::size_t i = 0; i < t.size(); ++i) {
        total += t[i] * v[i];
    }
    return total;
}

double ProbabilityFunctional::evaluate(const DeterministicStrategy& s) const {
    const int m = scenario().m;
    double total = 0.0;
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            total += (*this)(x, y, s.a[static_cast<std::size_t>(x)], s.b[static_cast<std::size_t>(y)]);
        }
    }
    return total;
}

namespace {

std::array<std::vector<ComplexMatrix>, 2> projectors(const std::array<ComplexMatrix, 2>& obs, int d,
                                                     const Tolerances& tol) {
    std::array<std::vector<ComplexMatrix>, 2> out;
    for (std::size_t x = 0; x < 2; ++x) {
        const EigenDecomposition eig = eig_unitary(obs[x], d, tol);
        for (int a = 0; a < d; ++a) {
            out[x].push_back(eig.projector(a));
        }
    }
    return out;
}

}  // namespace

CorrelationTensor born_probabilities(const Realization& r, const Tolerances& tol) {
    r.validate(tol);
    const int d = r.d;
    const auto pa = projectors(r.A, d, tol);
    const auto pb = projectors(r.B, d, tol);
    CorrelationTensor out(r.scenario());
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    out(x, y, a, b) = expectation(r.state, pa[static_cast<std::size_t>(x)][a],
                                                  pb[static_cast<std::size_t>(y)][b])
                                          .real();
                }
            }
        }
    }
    return out;
}

CorrelatorTensor correlators_from_probabilities(const CorrelationTensor& t) {
    const Scenario s = t.scenario();
    const int d = s.d;
    CorrelatorTensor out(s);
    for (int x = 0; x < s.m; ++x) {
        for (int y = 0; y < s.m; ++y) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    Complex acc{};
                    for (int a = 0; a < d; ++a) {
                        for (int b = 0; b < d; ++b) {
                            acc += omega_pow(d, (a * k + b * l) % d) * t(x, y, a, b);
                        }
                    }
                    out(x, y, k, l) = acc;
                }
            }
        }
    }
    return out;
}

CorrelationTensor probabilities_from_correlators(const CorrelatorTensor& c) {
    const Scenario s = c.scenario();
    const int d = s.d;
    CorrelationTensor out(s);
    const double norm = 1.0 / static_cast<double>(d * d);
    for (int x = 0; x < s.m; ++x) {
        for (int y = 0; y < s.m; ++y) {
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    Complex acc{};
                    for (int k = 0; k < d; ++k) {
                        for (int l = 0; l < d; ++l) {
                            acc += omega_pow(d, -((a * k + b * l) % d)) * c(x, y, k, l);
                        }
                    }
                    out(x, y, a, b) = norm * acc.real();
                }
            }
        }
    }
    return out;
}

CorrelatorTensor correlators_from_realization(const Realization& r, const Tolerances& tol) {
    r.validate(tol);
    const int d = r.d;
    std::array<std::vector<ComplexMatrix>, 2> powA;
    std::array<std::vector<ComplexMatrix>, 2> powB;
    for (std::size_t x = 0; x < 2; ++x) {
        for (int k = 0; k < d; ++k) {
            powA[x].push_back(unitary_power(r.A[x], k, tol));
            powB[x].push_back(unitary_power(r.B[x], k, tol));
        }
    }
    CorrelatorTensor out(r.scenario());
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    out(x, y, k, l) = expectation(r.state, powA[static_cast<std::size_t>(x)][k],
                                                  powB[static_cast<std::size_t>(y)][l]);
                }
            }
        }
    }
    return out;
}

CorrelationTensor deterministic_correlations(const Scenario& s, const DeterministicStrategy& strategy) {
    CorrelationTensor out(s);
    for (int x = 0; x < s.m; ++x) {
        for (int y = 0; y < s.m; ++y) {
            out(x, y, strategy.a[static_cast<std::size_t>(x)], strategy.b[static_cast<std::size_t>(y)]) = 1.0;
        }
    }
    return out;
}

namespace {

// Strategy number -> outcome per setting, base-d digits, party A first.
DeterministicStrategy decode_strategy(std::uint64_t code, int d, int m) {
    DeterministicStrategy s;
    s.a.resize(static_cast<std::size_t>(m));
    s.b.resize(static_cast<std::size_t>(m));
    for (int y = m - 1; y >= 0; --y) {
        s.b[static_cast<std::size_t>(y)] = static_cast<int>(code % static_cast<std::uint64_t>(d));
        code /= static_cast<std::uint64_t>(d);
    }
    for (int x = m - 1; x >= 0; --x) {
        s.a[static_cast<std::size_t>(x)] = static_cast<int>(code % static_cast<std::uint64_t>(d));
        code /= static_cast<std::uint64_t>(d);
    }
    return s;
}

}  // namespace

LocalBound local_bound_bruteforce(const ProbabilityFunctional& f, int cap) {
    const Scenario s = f.scenario();
    if (s.d > cap) {
        std::ostringstream msg;
        msg << "local_bound_bruteforce: d = " << s.d << " exceeds enumeration cap " << cap;
        throw std::invalid_argument(msg.str());
    }
    std::uint64_t per_party = 1;
    for (int i = 0; i < s.m; ++i) {
        per_party *= static_cast<std::uint64_t>(s.d);
    }

    // One chunk per Alice strategy; the best of each chunk is merged in
    // enumeration order so ties resolve identically for any thread count.
    std::vector<std::pair<double, std::uint64_t>> best(per_party);
    parallel_for(per_party, [&](std::size_t chunk) {
        double top = -std::numeric_limits<double>::infinity();
        std::uint64_t arg = 0;
        for (std::uint64_t bcode = 0; bcode < per_party; ++bcode) {
            const std::uint64_t code = chunk * per_party + bcode;
            const double v = f.evaluate(decode_strategy(code, s.d, s.m));
            if (v > top) {
                top = v;
                arg = code;
            }
        }
        best[chunk] = {top, arg};
    });

    LocalBound out;
    out.value = -std::numeric_limits<double>::infinity();
    std::uint64_t arg = 0;
    for (const auto& [v, code] : best) {
        if (v > out.value) {
            out.value = v;
            arg = code;
        }
    }
    out.argmax = decode_strategy(arg, s.d, s.m);
    out.strategies = per_party * per_party;
    return out;
}

std::uint64_t SampledStatistics::count(int x, int y, int a, int b) const {
    const Scenario& s = frequencies.scenario();
    const auto d = static_cast<std::size_t>(s.d);
    const std::size_t setting = static_cast<std::size_t>(x * s.m + y);
    return counts[(setting * d + static_cast<std::size_t>(a)) * d + static_cast<std::size_t>(b)];
}

SampledStatistics sample_statistics(const CorrelationTensor& p, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample_statistics: shots must be positive");
    }
    const Scenario s = p.scenario();
    const std::size_t settings = s.settings();
    const std::size_t cells = static_cast<std::size_t>(s.d * s.d);

    std::vector<double> cumulative(settings * cells);
    for (std::size_t st = 0; st < settings; ++st) {
        const int x = static_cast<int>(st) / s.m;
        const int y = static_cast<int>(st) % s.m;
        double acc = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            acc += std::max(0.0, p(x, y, static_cast<int>(c) / s.d, static_cast<int>(c) % s.d));
            cumulative[st * cells + c] = acc;
        }
        for (std::size_t c = 0; c < cells; ++c) {
            cumulative[st * cells + c] /= acc;
        }
    }

    constexpr std::uint64_t kBlock = 1ULL << 16;
    const std::uint64_t blocks = (shots + kBlock - 1) / kBlock;
    std::vector<std::vector<std::uint64_t>> partial(blocks);
    parallel_for(blocks, [&](std::size_t blk) {
        CounterRng rng(seed, blk);
        std::vector<std::uint64_t> local(settings * cells, 0);
        const std::uint64_t begin = blk * kBlock;
        const std::uint64_t end = std::min(shots, begin + kBlock);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            const std::size_t st = rng.below(settings);
            const double u = rng.uniform();
            const auto first = cumulative.begin() + static_cast<std::ptrdiff_t>(st * cells);
            auto it = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(cells), u);
            std::size_t c = static_cast<std::size_t>(it - first);
            c = std::min(c, cells - 1);
            ++local[st * cells + c];
        }
        partial[blk] = std::move(local);
    });

    SampledStatistics out;
    out.shots = shots;
    out.seed = seed;
    out.counts.assign(settings * cells, 0);
    out.setting_counts.assign(settings, 0);
    for (const auto& local : partial) {
        for (std::size_t i = 0; i < local.size(); ++i) {
            out.counts[i] += local[i];
            out.setting_counts[i / cells] += local[i];
        }
    }
    out.frequencies = CorrelationTensor(s);
    for (std::size_t st = 0; st < settings; ++st) {
        const int x = static_cast<int>(st) / s.m;
        const int y = static_cast<int>(st) % s.m;
        const auto n = out.setting_counts[st];
        for (std::size_t c = 0; c < cells; ++c) {
            out.frequencies(x, y, static_cast<int>(c) / s.d, static_cast<int>(c) % s.d) =
                n == 0 ? 1.0 / static_cast<double>(cells)
                       : static_cast<double>(out.counts[st * cells + c]) / static_cast<double>(n);
        }
    }
    return out;
}

SampledStatistics sample_statistics(const Realization& r, std::uint64_t shots, std::uint64_t seed) {
    return sample_statistics(born_probabilities(r), shots, seed);
}

}  // namespace qsk
