#pragma once

#include <ostream>

#include <nlohmann/json.hpp>

#include "qsk/bell.hpp"
#include "qsk/report.hpp"

namespace qsk::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInputError = 2;

struct VerifySelection {
    bool bounds = false;
    bool sos = false;
    bool traces = false;
    bool blocks = false;
    bool cglmp = false;
    bool cyclotomic = false;
    bool randomness = false;
    bool extract = false;

    [[nodiscard]] bool any() const {
        return bounds || sos || traces || blocks || cglmp || cyclotomic || randomness || extract;
    }
    static VerifySelection all();
};

/// Runs the selected check groups on r and returns the machine-readable
/// report; report["pass"] is the conjunction of every check.
[[nodiscard]] nlohmann::json verify_report(const Realization& r, const VerifySelection& selection,
                                           double tol_scale, const std::string& source);

/// Entry point shared by the `qsk` executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsk::cli
