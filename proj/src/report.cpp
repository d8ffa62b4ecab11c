#include "qsk/report.hpp"

#include <algorithm>
#include <cmath>

namespace qsk {

const Check& CheckList::add(std::string name, double residual, double tolerance) {
    checks_.push_back({std::move(name), residual, tolerance, !std::isnan(residual) && residual <= tolerance});
    return checks_.back();
}

const Check& CheckList::add_flag(std::string name, bool ok) {
    checks_.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok});
    return checks_.back();
}

void CheckList::append(const CheckList& other, const std::string& prefix) {
    for (const auto& c : other.checks_) {
        Check copy = c;
        copy.name = prefix + copy.name;
        checks_.push_back(std::move(copy));
    }
}

bool CheckList::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

double CheckList::max_residual() const {
    double worst = 0.0;
    for (const auto& c : checks_) {
        worst = std::max(worst, c.residual);
    }
    return worst;
}

const Check* CheckList::find(const std::string& name) const {
    for (const auto& c : checks_) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<const Check*> CheckList::failures() const {
    std::vector<const Check*> out;
    for (const auto& c : checks_) {
        if (!c.pass) {
            out.push_back(&c);
        }
    }
    return out;
}

}  // namespace qsk
