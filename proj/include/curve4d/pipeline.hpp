#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "curve4d/classify.hpp"
#include "curve4d/euler.hpp"

namespace curve4d {

enum class Command { Frames, Curvatures, Euler, Classify, Synthesize, Compare };
enum class OutputFormat { Csv, Json };

/// Fully resolved invocation of the tool: one command, one curve source,
/// sampling/method/tolerance knobs, and an output sink.
struct RunConfig {
    Command command = Command::Classify;

    // Exactly one curve source (synthesize uses `profile` instead).
    std::optional<std::string> expr_text;
    std::optional<std::string> builtin_name;
    std::optional<std::string> input_path;

    std::optional<Interval> range;
    int samples = 257;
    PropagationMethod method = PropagationMethod::Rk4;
    double tol = 1e-6;

    std::optional<std::string> out_path; // stdout when absent
    OutputFormat format = OutputFormat::Csv;

    // synthesize only
    std::optional<std::string> profile;
    double step = 1e-3;
    int steps = 5000;
    Eigen::Vector4d origin = Eigen::Vector4d::Zero();
};

/// Reads a `t,x1,x2,x3,x4` sample file ('#' comment lines allowed, parameter
/// strictly increasing) and builds a sampling via finite-difference jets.
CurveSampling ingest_samples(const std::string& path);

/// Initial frame policy shared by all commands: Frenet-hinted gauge when the
/// first sample admits a Frenet frame, pivoted completion otherwise.
std::vector<FrameSample> default_pt_frames(const CurveSampling& samp, PropagationMethod method);

/// Executes the command; returns the process exit status (0 success, 1 input
/// error, 2 numerical error) and writes diagnostics to `err`.
int run(const RunConfig& config, std::ostream& err);

} // namespace curve4d
