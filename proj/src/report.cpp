#include "modgeo/report.hpp"

#include <algorithm>

namespace modgeo {

void VerificationReport::add(std::string name, double residual, double tolerance) {
    entries_.push_back({std::move(name), residual, tolerance, residual <= tolerance});
}

void VerificationReport::add_outcome(std::string name, double residual, double tolerance,
                                     bool pass) {
    entries_.push_back({std::move(name), residual, tolerance, pass});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (const auto& e : other.entries_) {
        entries_.push_back({prefix + e.name, e.residual, e.tolerance, e.pass});
    }
}

bool VerificationReport::all_pass() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const CheckResult& e) { return e.pass; });
}

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.residual);
    return m;
}

}  // namespace modgeo
