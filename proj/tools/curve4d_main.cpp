#include <iostream>

#include <CLI11.hpp>

#include "curve4d/pipeline.hpp"

namespace {

using curve4d::RunConfig;

/// Parses "a:b" into an interval.
curve4d::Interval parse_range(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--range", "expected LO:HI, e.g. -1:1");
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        if (!(hi > lo)) throw CLI::ValidationError("--range", "upper bound must exceed lower");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--range", "expected LO:HI, e.g. -1:1");
    }
}

void add_source_options(CLI::App* cmd, RunConfig& config, std::string& range_text)
{
    auto* expr = cmd->add_option("--expr", config.expr_text,
                                 "curve as four comma-separated expressions of s");
    auto* builtin = cmd->add_option("--builtin", config.builtin_name,
                                    "catalog curve: example1, example2, circle, line, helix3");
    auto* input = cmd->add_option("--input", config.input_path,
                                  "CSV sample file with rows t,x1,x2,x3,x4");
    expr->excludes(builtin)->excludes(input);
    builtin->excludes(input);
    cmd->add_option("--range", range_text, "parameter interval LO:HI");
    cmd->add_option("--samples", config.samples, "number of grid samples (>= 9)");
}

void add_output_options(CLI::App* cmd, RunConfig& config, std::string& format_text,
                        std::string& method_text)
{
    cmd->add_option("--out", config.out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", format_text, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--method", method_text, "frame propagation: rk4 or dr")
        ->check(CLI::IsMember({"rk4", "dr"}));
    cmd->add_option("--tol", config.tol, "relative tolerance for classification verdicts");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frenet and parallel transport frames for curves in E^4"};
    app.require_subcommand(1);

    RunConfig config;
    std::string range_text, format_text = "csv", method_text = "rk4", origin_text;

    struct CmdSpec {
        const char* name;
        const char* help;
        curve4d::Command command;
    };
    const CmdSpec specs[] = {
        {"frames", "emit parallel transport frames per sample", curve4d::Command::Frames},
        {"curvatures", "emit k1,k2,k3 and the Frenet kappa,tau,sigma", curve4d::Command::Curvatures},
        {"euler", "emit Euler angles and relation residuals", curve4d::Command::Euler},
        {"classify", "spherical/normal/rectifying/osculating report", curve4d::Command::Classify},
        {"synthesize", "integrate a curve from a k1,k2,k3 profile", curve4d::Command::Synthesize},
        {"compare", "rk4 vs double-reflection deviation per step size", curve4d::Command::Compare},
    };

    for (const auto& spec : specs) {
        auto* cmd = app.add_subcommand(spec.name, spec.help);
        if (spec.command == curve4d::Command::Synthesize) {
            cmd->add_option("--profile", config.profile,
                            "three comma-separated expressions k1(s), k2(s), k3(s)")
                ->required();
            cmd->add_option("--step", config.step, "integration step");
            cmd->add_option("--steps", config.steps, "number of integration steps");
            cmd->add_option("--origin", origin_text, "start point x1,x2,x3,x4");
            cmd->add_option("--range", range_text, "profile domain LO:HI");
        } else {
            add_source_options(cmd, config, range_text);
        }
        add_output_options(cmd, config, format_text, method_text);
        cmd->callback([&config, spec]() { config.command = spec.command; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!range_text.empty()) config.range = parse_range(range_text);
        if (!origin_text.empty()) {
            std::array<double, 4> v{};
            std::stringstream ss(origin_text);
            std::string cell;
            std::size_t i = 0;
            while (std::getline(ss, cell, ',') && i < 4) v[i++] = std::stod(cell);
            if (i != 4) throw CLI::ValidationError("--origin", "expected x1,x2,x3,x4");
            config.origin = Eigen::Vector4d(v[0], v[1], v[2], v[3]);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ConfigError: " << e.what() << '\n';
        return 1;
    }
    config.format = format_text == "json" ? curve4d::OutputFormat::Json
                                          : curve4d::OutputFormat::Csv;
    config.method = method_text == "dr" ? curve4d::PropagationMethod::DoubleReflection
                                        : curve4d::PropagationMethod::Rk4;

    return curve4d::run(config, std::cerr);
}
