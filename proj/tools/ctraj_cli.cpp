#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctraj/csv_writer.hpp"
#include "ctraj/fields.hpp"
#include "ctraj/integrator.hpp"
#include "ctraj/oracles.hpp"
#include "ctraj/report_json.hpp"
#include "ctraj/scenario_config.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_oracle_failure = 1;
constexpr int exit_config_error = 2;
constexpr int exit_integration_abort = 3;
constexpr int exit_projection_singular = 4;
constexpr int exit_unsupported_oracle = 5;

struct CommonOptions {
    std::string config_path;
    std::string projection_override;
    std::string pole_override;
    std::optional<double> step_override;
    bool quiet = false;
};

ctraj::ScenarioConfig load_with_overrides(const CommonOptions& opt) {
    ctraj::ScenarioConfig cfg = ctraj::load_config(opt.config_path);
    if (!opt.projection_override.empty()) cfg.projection = opt.projection_override;
    if (!opt.pole_override.empty()) {
        cfg.pole = ctraj::detail::parse_real_list(opt.pole_override, "pole", 0);
    }
    if (opt.step_override) {
        if (!(*opt.step_override > 0.0)) {
            throw ctraj::config_error("--step must be positive");
        }
        cfg.step = *opt.step_override;
    }
    return cfg;
}

void emit_warnings(const ctraj::ValidatedScenario& vs, bool quiet) {
    if (quiet) return;
    for (const std::string& w : vs.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

int cmd_run(const CommonOptions& opt) {
    const ctraj::ScenarioConfig cfg = load_with_overrides(opt);
    const ctraj::ValidatedScenario vs = ctraj::validate_scenario(cfg);
    emit_warnings(vs, opt.quiet);

    const ctraj::Trajectory traj = ctraj::integrate(vs.scenario);
    const ctraj::ProjectionChoice projection = ctraj::projection_from_name(cfg.projection);
    const ctraj::AmbientVector pole = ctraj::pole_from_config(cfg);

    if (cfg.output_csv.empty()) {
        ctraj::write_trajectory_csv(std::cout, traj, projection, pole);
    } else {
        std::ofstream out(cfg.output_csv);
        if (!out) {
            throw ctraj::config_error("cannot open output.csv path '" + cfg.output_csv + "'");
        }
        ctraj::write_trajectory_csv(out, traj, projection, pole);
        if (!opt.quiet) {
            std::cerr << "wrote " << traj.samples.size() << " samples to " << cfg.output_csv
                      << "\n";
        }
    }
    return exit_ok;
}

int cmd_verify(const CommonOptions& opt) {
    const ctraj::ScenarioConfig cfg = load_with_overrides(opt);
    const ctraj::ValidatedScenario vs = ctraj::validate_scenario(cfg);
    if (!ctraj::oracle_supported(vs.scenario.field)) {
        std::cerr << "error: no closed-form oracle for field " << vs.scenario.field.name()
                  << "\n";
        return exit_unsupported_oracle;
    }
    emit_warnings(vs, opt.quiet);

    const ctraj::Trajectory traj = ctraj::integrate(vs.scenario);
    const ctraj::OracleReport report = ctraj::compare(traj);
    const nlohmann::json doc = ctraj::report_to_json(report);

    if (cfg.output_report.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(cfg.output_report);
        if (!out) {
            throw ctraj::config_error("cannot open output.report path '" + cfg.output_report +
                                      "'");
        }
        out << doc.dump(2) << "\n";
        if (!opt.quiet) {
            std::cerr << "wrote report to " << cfg.output_report << "\n";
        }
    }
    if (!opt.quiet) {
        for (const auto& c : report.checks) {
            std::cerr << (c.pass ? "  pass  " : "  FAIL  ") << c.name
                      << "  residual = " << c.max_residual << "  tol = " << c.tolerance << "\n";
        }
    }
    return report.summary_pass() ? exit_ok : exit_oracle_failure;
}

int cmd_catalog() {
    for (const ctraj::CatalogEntry& e : ctraj::catalog()) {
        std::cout << e.name << "  [" << e.space_form << "]  V = " << e.components
                  << "  lambda = " << e.lambda;
        if (e.parametrized) std::cout << "  (takes parameter vector a)";
        std::cout << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformal trajectories in the three 3-dimensional space forms"};
    app.require_subcommand(1);

    CommonOptions opt;
    double step_value = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("--config", opt.config_path, "scenario config file")->required();
        }
        sub->add_option("--projection", opt.projection_override,
                        "override projection: none|stereographic|ball|half_space");
        sub->add_option("--pole", opt.pole_override,
                        "stereographic pole as \"x,y,z,t\" (canonical axis point)");
        sub->add_option("--step", step_value, "override integration step size");
        sub->add_flag("--quiet", opt.quiet, "suppress warnings and progress notes");
    };

    CLI::App* run = app.add_subcommand("run", "integrate a scenario and write the CSV");
    add_common(run, true);
    CLI::App* verify =
        app.add_subcommand("verify", "integrate and check the closed-form predictions");
    add_common(verify, true);
    CLI::App* cat = app.add_subcommand("catalog", "list the field catalog");
    add_common(cat, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_config_error : exit_ok;
    }
    if (run->count("--step") || verify->count("--step")) opt.step_override = step_value;

    try {
        if (run->parsed()) return cmd_run(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (cat->parsed()) return cmd_catalog();
    } catch (const ctraj::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const ctraj::integration_error& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return exit_integration_abort;
    } catch (const ctraj::projection_singular_error& e) {
        std::cerr << "projection error: " << e.what() << "\n";
        return exit_projection_singular;
    } catch (const ctraj::unsupported_oracle_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_unsupported_oracle;
    } catch (const ctraj::error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_config_error;
}
