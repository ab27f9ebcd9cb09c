#pragma once

// Command layer. Every command is a pure function of a RunConfig that writes
// its data files and returns a process exit code, so the test suites can
// drive commands in-process exactly as the binary does.
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 unparsable or
// malformed input (or unwritable output), 3 input state not faithful.
//
// File formats
//   matrix file: {"dim": n, "entries": [[[re,im], ...], ...]} row-major
//   family file: {"dim": n, "generators": [entries...], "theta": [...], "eta": [...]}
//   classical file: {"weights": [...], "psi": [[re,im], ...], "h": [...]}
//     with an optional {"grid": {"k_poly": [...], "sigma": s, "t": t,
//     "dx": d, "r0": r, "rmax": R}} block used by --grid-mode
//   report file: JSON array of {check, trial, residual, tolerance, pass}

#include <cstdint>
#include <string>
#include <vector>

#include "modgeo/types.hpp"

namespace modgeo {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitNotFaithful = 3;

struct RunConfig {
    double tol = 1e-9;
    int steps = 11;
    std::uint64_t seed = 20250823ULL;
    std::vector<int> dims = {2, 3, 4, 6};
    int trials = 20;
    std::string input;   // rho0 file, family file, or classical file
    std::string input2;  // rho1 file where applicable
    double s = 0.5;      // parameter for the derivatives command
    std::string out;     // output base path; empty writes no files
    enum class Format { kJson, kCsv, kBoth } format = Format::kBoth;
    bool grid_mode = false;
};

struct ReportEntry {
    std::string check;
    int trial = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct PathRecord {
    double s = 0.0;
    RVector eigenvalues;  // spectrum of the state (probabilities when classical)
    double zeta = 0.0;
    double affinity_residual = 0.0;
    double tangent_residual = 0.0;
};

/// Reads a matrix file; throws Error subclasses on malformed content.
CMatrix load_matrix_file(const std::string& path);

/// The verification suite as data; cmd_verify serializes exactly this.
std::vector<ReportEntry> build_verify_report(const RunConfig& cfg);

int cmd_geodesic_matrix(const RunConfig& cfg);
int cmd_geodesic_expfam(const RunConfig& cfg);
int cmd_geodesic_classical(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_derivatives(const RunConfig& cfg);

}  // namespace modgeo
