#include "modgeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "modgeo/abelian.hpp"
#include "modgeo/cocycle.hpp"
#include "modgeo/geodesic.hpp"
#include "modgeo/parallel.hpp"
#include "modgeo/random.hpp"

namespace modgeo {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// parsing and serialization
// ---------------------------------------------------------------------------

CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw Error("matrix json: expected object with dim and entries");
    int n = j.at("dim").get<int>();
    if (n < 1) throw Error("matrix json: dim must be positive");
    const json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw Error("matrix json: entries must hold dim rows");
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error("matrix json: row length mismatch");
        for (int k = 0; k < n; ++k) {
            const json& cell = row.at(k);
            if (!cell.is_array() || cell.size() != 2)
                throw Error("matrix json: entries must be [re, im] pairs");
            m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(std::string("json parse failure: ") + e.what());
    }
    return j;
}

RVector real_vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw Error(std::string(what) + ": expected array");
    RVector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j.at(i).get<double>();
    return v;
}

CVector complex_vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw Error(std::string(what) + ": expected array");
    CVector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        const json& cell = j.at(i);
        if (!cell.is_array() || cell.size() != 2)
            throw Error(std::string(what) + ": entries must be [re, im] pairs");
        v[static_cast<Eigen::Index>(i)] =
            Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
    return v;
}

json report_to_json(const std::vector<ReportEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        arr.push_back(json{{"check", e.check},
                           {"trial", e.trial},
                           {"residual", e.residual},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass}});
    }
    return arr;
}

json record_to_json(const PathRecord& rec) {
    json eig = json::array();
    for (Eigen::Index i = 0; i < rec.eigenvalues.size(); ++i) eig.push_back(rec.eigenvalues[i]);
    return json{{"s", rec.s},
                {"eigenvalues", std::move(eig)},
                {"zeta", rec.zeta},
                {"log_affinity_residual", rec.affinity_residual},
                {"tangent_residual", rec.tangent_residual}};
}

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
    if (!out) throw Error("write failure: " + path);
}

void write_records(const RunConfig& cfg, const std::vector<PathRecord>& records) {
    if (cfg.out.empty()) return;
    bool want_json = cfg.format != RunConfig::Format::kCsv;
    bool want_csv = cfg.format != RunConfig::Format::kJson;
    if (want_json) {
        json arr = json::array();
        for (const auto& r : records) arr.push_back(record_to_json(r));
        write_text_file(cfg.out + ".path.json", arr.dump(2) + "\n");
    }
    if (want_csv) {
        std::ostringstream csv;
        Eigen::Index n = records.empty() ? 0 : records.front().eigenvalues.size();
        csv << "s";
        for (Eigen::Index i = 0; i < n; ++i) csv << ",eig_" << (i + 1);
        csv << ",zeta,log_affinity_residual,tangent_residual\n";
        for (const auto& r : records) {
            csv << format_g17(r.s);
            for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i)
                csv << "," << format_g17(r.eigenvalues[i]);
            csv << "," << format_g17(r.zeta) << "," << format_g17(r.affinity_residual) << ","
                << format_g17(r.tangent_residual) << "\n";
        }
        write_text_file(cfg.out + ".path.csv", csv.str());
    }
}

void write_report(const RunConfig& cfg, const std::vector<ReportEntry>& entries) {
    if (cfg.out.empty()) return;
    write_text_file(cfg.out + ".report.json", report_to_json(entries).dump(2) + "\n");
}

int summarize(const char* command, const std::vector<ReportEntry>& entries) {
    double max_residual = 0.0;
    std::vector<const ReportEntry*> failing;
    for (const auto& e : entries) {
        max_residual = std::max(max_residual, e.residual);
        if (!e.pass) failing.push_back(&e);
    }
    if (failing.empty()) {
        std::cout << command << ": " << entries.size() << " checks pass (max residual "
                  << max_residual << ")\n";
        return kExitPass;
    }
    std::cout << command << ": " << failing.size() << " of " << entries.size()
              << " checks FAILED\n";
    for (const auto* e : failing) {
        std::cout << "  FAIL " << e->check << " trial " << e->trial << " residual "
                  << e->residual << " tolerance " << e->tolerance << "\n";
    }
    return kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// path sampling shared by the geodesic commands
// ---------------------------------------------------------------------------

double state_log_affinity(const GeodesicPath& path, const PathState& at_s, double s,
                          const PathState& at_zero) {
    int n = path.dim();
    CMatrix log_ps =
        apply_fn(at_s.rho.eig(), log_fn().f) + at_s.zeta * CMatrix::Identity(n, n);
    CMatrix log_p0 =
        apply_fn(at_zero.rho.eig(), log_fn().f) + at_zero.zeta * CMatrix::Identity(n, n);
    return (log_ps - log_p0 - s * path.generator()).norm();
}

struct SampledPath {
    std::vector<PathRecord> records;
    std::vector<ReportEntry> checks;
};

SampledPath sample_matrix_path(const GeodesicPath& path, const RunConfig& cfg) {
    SampledPath out;
    const double cd_delta = 1e-4;
    const double tol_cd = std::max(cfg.tol, 1e-6);
    double h_scale = 1.0;
    if (path.generator().norm() > 0.0)
        h_scale = std::max(1.0, herm_eig(path.generator()).values.cwiseAbs().maxCoeff());
    CMatrix a_obs = path.generator() / h_scale;

    PathState at_zero = path.state(0.0);
    for (int j = 0; j < cfg.steps; ++j) {
        double s = static_cast<double>(j) / (cfg.steps - 1);
        PathState ps = path.state(s);
        PathRecord rec;
        rec.s = s;
        rec.eigenvalues = ps.rho.eig().values;
        rec.zeta = ps.zeta;
        rec.affinity_residual = state_log_affinity(path, ps, s, at_zero);
        double exact = path.tangent_functional(s, a_obs);
        double up = (path.state(s + cd_delta).rho.matrix() * a_obs).trace().real();
        double down = (path.state(s - cd_delta).rho.matrix() * a_obs).trace().real();
        rec.tangent_residual = std::abs(exact - (up - down) / (2.0 * cd_delta));
        out.records.push_back(rec);

        out.checks.push_back({"log_affinity", j, rec.affinity_residual, cfg.tol,
                              rec.affinity_residual <= cfg.tol});
        out.checks.push_back({"state_normalization", j,
                              std::abs(rec.eigenvalues.sum() - 1.0), cfg.tol,
                              std::abs(rec.eigenvalues.sum() - 1.0) <= cfg.tol});
        out.checks.push_back({"tangent_vs_central_difference", j, rec.tangent_residual, tol_cd,
                              rec.tangent_residual <= tol_cd});
    }
    double zeta_norm = std::abs(std::log(path.state(0.5).rho.matrix().trace().real()));
    out.checks.push_back(
        {"path_cocycle_normalization", 0, zeta_norm, 1e-12, zeta_norm <= 1e-12});
    return out;
}

// ---------------------------------------------------------------------------
// verification suite
// ---------------------------------------------------------------------------

struct TrialResult {
    std::vector<std::pair<std::string, double>> family_residuals;
};

TrialResult run_trial(int dim, std::uint64_t trial_seed) {
    TrialResult out;
    std::mt19937_64 rng(trial_seed);
    DensityMatrix rho0 = random_density(dim, rng);
    CMatrix p = random_positive(dim, rng);
    DensityMatrix rho1 = random_density(dim, rng);
    GnsSpace space(rho0);
    Cocycle cocycle(space, p);

    const std::vector<double> grid = {-2.0, -0.5, 0.0, 0.3, 1.7};
    double worst = 0.0;
    for (double r : grid)
        for (double t : grid) worst = std::max(worst, cocycle.cocycle_defect(r, t));
    out.family_residuals.emplace_back("cocycle_identity", worst);

    VerificationReport strip = cocycle.analytic_bound_report({0.0, 0.1, 0.25, 0.4, 0.5});
    out.family_residuals.emplace_back("strip_interpolation_bound", strip.max_residual());

    std::vector<CMatrix> samples = {CMatrix::Identity(dim, dim), random_hermitian(dim, rng),
                                    random_gaussian(dim, rng)};
    VerificationReport ops = cocycle.operator_identity_report(samples);
    out.family_residuals.emplace_back("operator_identities", ops.max_residual());

    VerificationReport chain = cocycle.half_power_chain_report(random_gaussian(dim, rng));
    out.family_residuals.emplace_back("half_power_chain", chain.max_residual());

    GeodesicPath path = GeodesicPath::connect(rho0, rho1);
    VerificationReport affinity =
        path.affinity_report({{0.3, 0.0}, {0.7, 0.2}, {1.0, 0.0}, {0.5, 0.25}});
    out.family_residuals.emplace_back("log_affinity", affinity.max_residual());

    double endpoint = (path.state(1.0).rho.matrix() - rho1.matrix()).norm();
    out.family_residuals.emplace_back("endpoint_recovery", endpoint);

    double mixture_worst = 0.0;
    for (auto [s, r] : std::vector<std::pair<double, double>>{{0.5, 0.0}, {0.25, 0.75}, {0.5, 1.0}}) {
        double res = log_affinity_residual(convex_mixture(rho0, rho1, s),
                                           convex_mixture(rho0, rho1, r), s - r,
                                           path.generator());
        mixture_worst = std::max(mixture_worst, res);
    }
    out.family_residuals.emplace_back("mixture_control_shortfall",
                                      std::max(0.0, 1e-3 - mixture_worst));

    VerificationReport rescale = path.rescale_report(0.4, {0.0, 0.3, 0.7, 1.0});
    out.family_residuals.emplace_back("rescale_invariance", rescale.max_residual());

    double synth_worst = 0.0;
    for (double s : {0.0, 0.25, 0.6, 1.0}) {
        Cocycle along = path.cocycle_at(s);
        for (double t : {-1.5, 0.4, 2.0}) {
            synth_worst = std::max(
                synth_worst, (path.synthesized_unitary(s, t) - along.unitary(t)).norm());
        }
    }
    out.family_residuals.emplace_back("synthesized_unitary_match", synth_worst);

    // Classical instance of matching size, bridged to its diagonal image.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RVector w(dim), h_c(dim);
    CVector psi(dim);
    for (int i = 0; i < dim; ++i) {
        w[i] = 0.5 + 1.5 * unif(rng);
        h_c[i] = -2.0 + 4.0 * unif(rng);
        Complex g(unif(rng) - 0.5, unif(rng) - 0.5);
        if (std::abs(g) < 0.1) g += Complex(0.25, 0.0);
        psi[i] = g;
    }
    double norm2 = (w.array() * psi.array().abs2()).sum();
    psi /= std::sqrt(norm2);
    ClassicalAmplitude amp(FiniteMeasureSpace(w), psi);

    auto [rho0d, rho1d] = embed_diagonal(amp, h_c);
    GeodesicPath diag_path = GeodesicPath::connect(rho0d, rho1d);
    double z_c1 = classical_geodesic(amp, h_c, 1.0).zeta;
    double z_m0 = diag_path.zeta(0.0);
    double z_m1 = diag_path.zeta(1.0);
    double bridge_worst = 0.0;
    for (double s : {0.0, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
        ClassicalPathPoint cp = classical_geodesic(amp, h_c, s);
        RVector p_s = classical_state(cp.omega);
        PathState ms = diag_path.state(s);
        for (int i = 0; i < dim; ++i) {
            bridge_worst =
                std::max(bridge_worst, std::abs(p_s[i] - ms.rho.matrix()(i, i).real()));
            for (int jj = 0; jj < dim; ++jj)
                if (jj != i)
                    bridge_worst = std::max(bridge_worst, std::abs(ms.rho.matrix()(i, jj)));
        }
        double gauge_c = cp.zeta - s * z_c1;
        double gauge_m = ms.zeta - (1.0 - s) * z_m0 - s * z_m1;
        bridge_worst = std::max(bridge_worst, std::abs(gauge_c - gauge_m));
    }
    out.family_residuals.emplace_back("classical_diagonal_bridge", bridge_worst);
    return out;
}

}  // namespace

CMatrix load_matrix_file(const std::string& path) { return matrix_from_json(parse_file(path)); }

std::vector<ReportEntry> build_verify_report(const RunConfig& cfg) {
    struct Slot {
        int dim;
        int trial;
        TrialResult result;
    };
    std::vector<Slot> slots;
    for (int dim : cfg.dims)
        for (int k = 0; k < cfg.trials; ++k) slots.push_back({dim, k, {}});

    parallel_for_index(slots.size(), [&](std::size_t i) {
        std::uint64_t trial_seed =
            derive_seed(cfg.seed, static_cast<std::uint64_t>(slots[i].dim) * 1000003ULL +
                                      static_cast<std::uint64_t>(slots[i].trial));
        slots[i].result = run_trial(slots[i].dim, trial_seed);
    });

    // Group by check family, then dimension, then trial; names carry the
    // dimension so the listing is sorted by (check, trial).
    std::vector<ReportEntry> entries;
    if (slots.empty()) return entries;
    size_t families = slots.front().result.family_residuals.size();
    for (size_t f = 0; f < families; ++f) {
        for (const auto& slot : slots) {
            const auto& [name, residual] = slot.result.family_residuals[f];
            double tol = name == "mixture_control_shortfall" ? 0.0 : cfg.tol;
            std::ostringstream check;
            check << name << "/n=" << slot.dim;
            entries.push_back({check.str(), slot.trial, residual, tol, residual <= tol});
        }
    }
    return entries;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<ReportEntry> entries;
    try {
        entries = build_verify_report(cfg);
    } catch (const NotFaithful& e) {
        std::cout << "verify: " << e.what() << "\n";
        return kExitNotFaithful;
    } catch (const Error& e) {
        std::cout << "verify: " << e.what() << "\n";
        return kExitParseError;
    }
    try {
        write_report(cfg, entries);
    } catch (const Error& e) {
        std::cout << "verify: " << e.what() << "\n";
        return kExitParseError;
    }
    return summarize("verify", entries);
}

int cmd_geodesic_matrix(const RunConfig& cfg) {
    try {
        DensityMatrix rho0(load_matrix_file(cfg.input));
        DensityMatrix rho1(load_matrix_file(cfg.input2));
        GeodesicPath path = GeodesicPath::connect(rho0, rho1);
        SampledPath sampled = sample_matrix_path(path, cfg);
        double endpoint = (path.state(1.0).rho.matrix() - rho1.matrix()).norm();
        sampled.checks.push_back(
            {"endpoint_recovery", 0, endpoint, cfg.tol, endpoint <= cfg.tol});
        write_records(cfg, sampled.records);
        write_report(cfg, sampled.checks);
        return summarize("geodesic-matrix", sampled.checks);
    } catch (const NotFaithful& e) {
        std::cout << "geodesic-matrix: " << e.what() << "\n";
        return kExitNotFaithful;
    } catch (const Error& e) {
        std::cout << "geodesic-matrix: " << e.what() << "\n";
        return kExitParseError;
    }
}

int cmd_geodesic_expfam(const RunConfig& cfg) {
    std::vector<CMatrix> generators;
    RVector theta, eta;
    int dim = 0;
    try {
        json doc = parse_file(cfg.input);
        dim = doc.at("dim").get<int>();
        for (const auto& g : doc.at("generators"))
            generators.push_back(matrix_from_json(json{{"dim", dim}, {"entries", g}}));
        theta = real_vector_from_json(doc.at("theta"), "theta");
        eta = real_vector_from_json(doc.at("eta"), "eta");
    } catch (const json::exception& e) {
        std::cout << "geodesic-expfam: " << e.what() << "\n";
        return kExitParseError;
    } catch (const Error& e) {
        std::cout << "geodesic-expfam: " << e.what() << "\n";
        return kExitParseError;
    }

    try {
        ExpFamily fam(dim, generators);
        GeodesicPath path = GeodesicPath::from_expfam(fam, theta, eta);
        SampledPath sampled = sample_matrix_path(path, cfg);
        double tol_fam = std::max(cfg.tol, 1e-10);
        for (int j = 0; j < cfg.steps; ++j) {
            double s = static_cast<double>(j) / (cfg.steps - 1);
            RVector mix = (1.0 - s) * theta + s * eta;
            double res =
                (path.state(s).rho.matrix() - expfam_state(fam, mix).rho.matrix()).norm();
            sampled.checks.push_back({"family_consistency", j, res, tol_fam, res <= tol_fam});
        }
        write_records(cfg, sampled.records);
        write_report(cfg, sampled.checks);
        return summarize("geodesic-expfam", sampled.checks);
    } catch (const NotFaithful& e) {
        std::cout << "geodesic-expfam: " << e.what() << "\n";
        return kExitNotFaithful;
    } catch (const Error& e) {
        std::cout << "geodesic-expfam: " << e.what() << "\n";
        return kExitParseError;
    }
}

int cmd_geodesic_classical(const RunConfig& cfg) {
    RVector weights, h;
    CVector psi;
    json grid_block;
    try {
        json doc = parse_file(cfg.input);
        if (cfg.grid_mode) {
            grid_block = doc.at("grid");
        } else {
            weights = real_vector_from_json(doc.at("weights"), "weights");
            psi = complex_vector_from_json(doc.at("psi"), "psi");
            h = real_vector_from_json(doc.at("h"), "h");
        }
    } catch (const json::exception& e) {
        std::cout << "geodesic-classical: " << e.what() << "\n";
        return kExitParseError;
    } catch (const Error& e) {
        std::cout << "geodesic-classical: " << e.what() << "\n";
        return kExitParseError;
    }

    try {
        if (cfg.grid_mode) {
            RVector k_poly = real_vector_from_json(grid_block.at("k_poly"), "k_poly");
            double sigma = grid_block.value("sigma", 1.0);
            double t = grid_block.value("t", 1.0);
            GridSpec grid;
            grid.dx = grid_block.value("dx", 1e-2);
            grid.r0 = grid_block.value("r0", 2.0);
            grid.rmax = grid_block.value("rmax", 64.0);
            grid.k = [k_poly](double x) {
                double acc = 0.0;
                for (Eigen::Index i = k_poly.size() - 1; i >= 0; --i) acc = acc * x + k_poly[i];
                return acc;
            };
            grid.density = [sigma](double x) {
                return std::exp(-0.5 * x * x / (sigma * sigma)) /
                       (sigma * std::sqrt(2.0 * M_PI));
            };
            TangentCheckReport report = exp_tangent_check_grid(grid, t);
            if (!cfg.out.empty()) {
                json data{{"value", report.value},
                          {"value_plus", report.value_plus},
                          {"value_minus", report.value_minus},
                          {"finite", report.finite},
                          {"divergence_flag", report.divergence_flag}};
                write_text_file(cfg.out + ".grid.json", data.dump(2) + "\n");
            }
            std::vector<ReportEntry> checks;
            checks.push_back({"grid_tangent_condition", 0,
                              report.divergence_flag ? 1.0 : 0.0, 0.5,
                              !report.divergence_flag});
            write_report(cfg, checks);
            return summarize("geodesic-classical", checks);
        }

        ClassicalAmplitude amp{FiniteMeasureSpace(weights), psi};
        if (h.size() != psi.size()) throw DimensionMismatch("generator length mismatch");
        const double cd_delta = 1e-4;
        const double tol_cd = std::max(cfg.tol, 1e-6);
        double h_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        RVector a_obs = h / h_scale;
        RVector p0 = classical_state(amp);
        double z1 = classical_geodesic(amp, h, 1.0).zeta;

        std::vector<PathRecord> records;
        std::vector<ReportEntry> checks;
        std::vector<double> zetas;
        for (int j = 0; j < cfg.steps; ++j) {
            double s = static_cast<double>(j) / (cfg.steps - 1);
            ClassicalPathPoint cp = classical_geodesic(amp, h, s);
            RVector p_s = classical_state(cp.omega);
            PathRecord rec;
            rec.s = s;
            rec.eigenvalues = p_s;
            rec.zeta = cp.zeta;
            RVector log_gap =
                (p_s.array().log() - p0.array().log()).matrix() + s * h +
                cp.zeta * RVector::Ones(p_s.size());
            rec.affinity_residual = log_gap.norm();
            // Exact d/ds of sum p_s a against a central difference.
            double zp = -(p_s.array() * h.array()).sum();
            double exact = (p_s.array() * (-h.array() - zp) * a_obs.array()).sum();
            RVector up = classical_state(classical_geodesic(amp, h, s + cd_delta).omega);
            RVector dn = classical_state(classical_geodesic(amp, h, s - cd_delta).omega);
            double cd = ((up - dn).array() * a_obs.array()).sum() / (2.0 * cd_delta);
            rec.tangent_residual = std::abs(exact - cd);
            records.push_back(rec);
            zetas.push_back(cp.zeta);

            double p_norm = std::abs(p_s.sum() - 1.0);
            checks.push_back({"state_normalization", j, p_norm, cfg.tol, p_norm <= cfg.tol});
            checks.push_back({"log_affinity", j, rec.affinity_residual, cfg.tol,
                              rec.affinity_residual <= cfg.tol});
            checks.push_back({"tangent_vs_central_difference", j, rec.tangent_residual, tol_cd,
                              rec.tangent_residual <= tol_cd});
        }

        // Flow property: p_{s+r} is proportional to p_s e^{-r h}.
        RVector p_a = classical_state(classical_geodesic(amp, h, 0.3).omega);
        RVector p_b = classical_state(classical_geodesic(amp, h, 0.7).omega);
        RVector expected = (p_a.array() * (-0.4 * h.array()).exp()).matrix();
        expected /= expected.sum();
        double flow = (p_b - expected).cwiseAbs().maxCoeff();
        checks.push_back({"flow_property", 0, flow, cfg.tol, flow <= cfg.tol});

        // Convexity of zeta on the sampled grid.
        double convexity_shortfall = 0.0;
        for (size_t j = 1; j + 1 < zetas.size(); ++j) {
            double second = zetas[j + 1] - 2.0 * zetas[j] + zetas[j - 1];
            convexity_shortfall = std::max(convexity_shortfall, -second);
        }
        double tol_convex = std::max(cfg.tol, 1e-10);
        checks.push_back({"zeta_convexity_shortfall", 0, convexity_shortfall, tol_convex,
                          convexity_shortfall <= tol_convex});

        // Diagonal-matrix bridge at the midpoint.
        auto [rho0d, rho1d] = embed_diagonal(amp, h);
        GeodesicPath diag_path = GeodesicPath::connect(rho0d, rho1d);
        ClassicalPathPoint mid = classical_geodesic(amp, h, 0.5);
        RVector pm = classical_state(mid.omega);
        PathState md = diag_path.state(0.5);
        double bridge = 0.0;
        for (Eigen::Index i = 0; i < pm.size(); ++i)
            bridge = std::max(bridge, std::abs(pm[i] - md.rho.matrix()(i, i).real()));
        double gauge_c = mid.zeta - 0.5 * z1;
        double gauge_m = md.zeta - 0.5 * diag_path.zeta(0.0) - 0.5 * diag_path.zeta(1.0);
        bridge = std::max(bridge, std::abs(gauge_c - gauge_m));
        checks.push_back({"diagonal_bridge", 0, bridge, cfg.tol, bridge <= cfg.tol});

        write_records(cfg, records);
        write_report(cfg, checks);
        return summarize("geodesic-classical", checks);
    } catch (const NotFaithful& e) {
        std::cout << "geodesic-classical: " << e.what() << "\n";
        return kExitNotFaithful;
    } catch (const Error& e) {
        std::cout << "geodesic-classical: " << e.what() << "\n";
        return kExitParseError;
    }
}

int cmd_derivatives(const RunConfig& cfg) {
    try {
        DensityMatrix rho0(load_matrix_file(cfg.input));
        DensityMatrix rho1(load_matrix_file(cfg.input2));
        GeodesicPath path = GeodesicPath::connect(rho0, rho1);
        LogDerivatives d = path.log_derivatives(cfg.s);

        // Convention arbitration for the state-vector derivative: half versus
        // full multiplier against a tight central difference.
        const double delta = 1e-5;
        auto omega_at = [&](double s) {
            return apply_fn(path.state(s).rho.eig(), sqrt_fn().f);
        };
        CMatrix omega = omega_at(cfg.s);
        CMatrix cd = (omega_at(cfg.s + delta) - omega_at(cfg.s - delta)) / (2.0 * delta);
        CMatrix identity = CMatrix::Identity(path.dim(), path.dim());
        double res_half = (cd - 0.5 * (d.hl - d.zeta_prime * identity) * omega).norm();
        double res_full = (cd - (d.hl - 0.5 * d.zeta_prime * identity) * omega).norm();

        CMatrix a_probe = path.generator();
        if (a_probe.norm() == 0.0) a_probe = identity;
        TangentConventionReport tangent = path.tangent_convention_report(cfg.s, a_probe);

        json out{{"s", d.s},
                 {"hl", matrix_to_json(d.hl)},
                 {"lsym", matrix_to_json(d.lsym)},
                 {"lright", matrix_to_json(d.lright)},
                 {"lleft", matrix_to_json(d.lleft)},
                 {"zeta_prime", d.zeta_prime},
                 {"residual_hl", d.residual_hl},
                 {"residual_sym", d.residual_sym},
                 {"residual_right", d.residual_right},
                 {"residual_left", d.residual_left},
                 {"residual_defining", d.residual_defining},
                 {"residual_selfadjoint", d.residual_selfadjoint},
                 {"quad_disagreement", d.quad_disagreement},
                 {"quad_variant_disagreement", d.quad_variant_disagreement},
                 {"state_vector_derivative",
                  json{{"residual_half_convention", res_half},
                       {"residual_full_convention", res_full},
                       {"half_matches", res_half < res_full}}},
                 {"tangent",
                  json{{"primary", tangent.primary},
                       {"modular_full",
                        json::array({tangent.modular_full.real(), tangent.modular_full.imag()})},
                       {"modular_half",
                        json::array({tangent.modular_half.real(), tangent.modular_half.imag()})},
                       {"mismatch_full", tangent.mismatch_full},
                       {"mismatch_half", tangent.mismatch_half},
                       {"imag_full", tangent.imag_full},
                       {"full_matches", tangent.full_matches}}}};
        if (!cfg.out.empty()) write_text_file(cfg.out + ".derivatives.json", out.dump(2) + "\n");

        std::vector<ReportEntry> checks;
        checks.push_back({"derivative_defining_equations", 0, d.residual_defining, cfg.tol,
                          d.residual_defining <= cfg.tol});
        checks.push_back({"state_vector_derivative_half_convention", 0, res_half,
                          std::max(cfg.tol, 1e-6), res_half <= std::max(cfg.tol, 1e-6)});
        write_report(cfg, checks);
        return summarize("derivatives", checks);
    } catch (const QuadratureDivergence& e) {
        std::cout << "derivatives: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const NotFaithful& e) {
        std::cout << "derivatives: " << e.what() << "\n";
        return kExitNotFaithful;
    } catch (const Error& e) {
        std::cout << "derivatives: " << e.what() << "\n";
        return kExitParseError;
    }
}

}  // namespace modgeo
