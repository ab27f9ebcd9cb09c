// Command line front end for the modular geodesic library.
//
//   modgeo verify              randomized self-verification sweep
//   modgeo geodesic-matrix     sample the path between two density matrices
//   modgeo geodesic-expfam     sample the path between two family parameters
//   modgeo geodesic-classical  sample a weighted-point-mass path
//   modgeo derivatives         logarithmic derivative report at one point
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 unusable input or
// output, 3 an input state is not faithful.

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modgeo/cli.hpp"

namespace {

void add_common(CLI::App* cmd, modgeo::RunConfig& cfg, std::string& format) {
    cmd->add_option("--tol", cfg.tol, "Residual tolerance for pass/fail checks");
    cmd->add_option("--out", cfg.out, "Output file prefix (omit to skip file output)");
    cmd->add_option("--format", format, "Data file format: json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
}

void add_steps(CLI::App* cmd, modgeo::RunConfig& cfg) {
    cmd->add_option("--steps", cfg.steps, "Number of sample points on [0, 1]")
        ->check(CLI::Range(2, 100000));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite dimensional modular geodesics between faithful states"};
    app.require_subcommand(1);

    modgeo::RunConfig cfg;
    std::string format = "both";

    CLI::App* verify = app.add_subcommand("verify", "Randomized identity sweep");
    add_common(verify, cfg, format);
    verify->add_option("--seed", cfg.seed, "Base seed for the random sweep");
    verify->add_option("--trials", cfg.trials, "Trials per dimension")
        ->check(CLI::Range(1, 100000));
    verify->add_option("--dims", cfg.dims, "Matrix dimensions to exercise")
        ->delimiter(',')
        ->check(CLI::Range(1, 64));

    CLI::App* gmat = app.add_subcommand("geodesic-matrix",
                                        "Path between two density matrix files");
    add_common(gmat, cfg, format);
    add_steps(gmat, cfg);
    gmat->add_option("rho0", cfg.input, "Initial density matrix (json)")->required();
    gmat->add_option("rho1", cfg.input2, "Final density matrix (json)")->required();

    CLI::App* gfam = app.add_subcommand("geodesic-expfam",
                                        "Path between two parameter vectors of a family");
    add_common(gfam, cfg, format);
    add_steps(gfam, cfg);
    gfam->add_option("family", cfg.input, "Family description file (json)")->required();

    CLI::App* gcl = app.add_subcommand("geodesic-classical",
                                       "Path for a weighted-point-mass instance");
    add_common(gcl, cfg, format);
    add_steps(gcl, cfg);
    gcl->add_option("instance", cfg.input, "Instance description file (json)")->required();
    gcl->add_flag("--grid-mode", cfg.grid_mode,
                  "Run the sampled-line tangent check from the grid block");

    CLI::App* deriv = app.add_subcommand("derivatives",
                                         "Logarithmic derivative report at one point");
    add_common(deriv, cfg, format);
    deriv->add_option("rho0", cfg.input, "Initial density matrix (json)")->required();
    deriv->add_option("rho1", cfg.input2, "Final density matrix (json)")->required();
    deriv->add_option("--s", cfg.s, "Path parameter at which to evaluate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return modgeo::kExitParseError;
    }

    if (format == "json") cfg.format = modgeo::RunConfig::Format::kJson;
    else if (format == "csv") cfg.format = modgeo::RunConfig::Format::kCsv;
    else cfg.format = modgeo::RunConfig::Format::kBoth;

    if (verify->parsed()) return modgeo::cmd_verify(cfg);
    if (gmat->parsed()) return modgeo::cmd_geodesic_matrix(cfg);
    if (gfam->parsed()) return modgeo::cmd_geodesic_expfam(cfg);
    if (gcl->parsed()) return modgeo::cmd_geodesic_classical(cfg);
    return modgeo::cmd_derivatives(cfg);
}
