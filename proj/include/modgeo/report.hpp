#pragma once

#include <string>
#include <vector>

namespace modgeo {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// A flat list of named residual checks; the building block of every
/// verification command and of the acceptance suite.
class VerificationReport {
  public:
    /// Records residual <= tolerance as pass/fail.
    void add(std::string name, double residual, double tolerance);
    /// Records a check with an externally decided outcome (e.g. lower bounds).
    void add_outcome(std::string name, double residual, double tolerance, bool pass);
    void merge(const VerificationReport& other, const std::string& prefix = "");

    bool all_pass() const;
    double max_residual() const;
    const std::vector<CheckResult>& entries() const { return entries_; }

  private:
    std::vector<CheckResult> entries_;
};

}  // namespace modgeo
