#pragma once

// Randomness certified at the self-tested point: Bob's outcomes are uniform,
// so each round yields log2(d) bits from one bit of setting choice.

#include <cstdint>
#include <vector>

#include "qsk/bell.hpp"
#include "qsk/selftest.hpp"

namespace qsk {

struct GuessingProbability {
    std::vector<double> distribution;  // p(b | setting), b in [0, d)
    double value = 0.0;                // max_b p(b | setting)
};

/// Extracts r first; if the extraction fails the call refuses with
/// std::domain_error (no bound is claimed away from the maximal violation).
/// Otherwise evaluates the outcome distribution of `party`'s observable
/// `setting` (0 or 1) on the canonicalized state.
[[nodiscard]] GuessingProbability ideal_guessing_probability(const Realization& r, Side party, int setting,
                                                             const ExtractionOptions& options = {});

/// log2(d).
[[nodiscard]] double certified_bits(int d);

struct RandomnessReport {
    int d = 0;
    std::uint64_t rounds = 0;
    std::vector<double> distribution;
    double guessing_probability = 0.0;
    double certified_bits = 0.0;  // per round, -log2(guessing_probability)
    double input_bits = 0.0;      // one bit per round
    double output_bits = 0.0;
    double expansion_ratio = 0.0;
};

/// Ledger for `rounds` rounds at the canonical point (Bob, first setting).
[[nodiscard]] RandomnessReport expansion_ledger(int d, std::uint64_t rounds);

}  // namespace qsk
