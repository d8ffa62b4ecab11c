#pragma once

// Named numerical checks: a residual compared against a tolerance.

#include <string>
#include <vector>

namespace qsk {

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class CheckList {
public:
    /// Records residual <= tolerance under `name`. NaN never passes.
    const Check& add(std::string name, double residual, double tolerance);
    /// Records a boolean condition (residual 0 or 1, tolerance 0).
    const Check& add_flag(std::string name, bool ok);
    void append(const CheckList& other, const std::string& prefix = {});

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] double max_residual() const;
    [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
    [[nodiscard]] const Check* find(const std::string& name) const;
    [[nodiscard]] std::vector<const Check*> failures() const;
    [[nodiscard]] bool empty() const { return checks_.empty(); }

private:
    std::vector<Check> checks_;
};

}  // namespace qsk
