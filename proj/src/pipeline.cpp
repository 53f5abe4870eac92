#include "curve4d/pipeline.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace curve4d {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

std::string format_full(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Table& table, std::ostream& out)
{
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (row[c]) out << format_full(*row[c]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out)
{
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c])
                obj[table.columns[c]] = *row[c];
            else
                obj[table.columns[c]] = nullptr;
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void emit(const Table& table, const RunConfig& config, std::ostream& fallback)
{
    auto write = [&](std::ostream& out) {
        if (config.format == OutputFormat::Json)
            write_json(table, out);
        else
            write_csv(table, out);
    };
    if (config.out_path) {
        std::ofstream file(*config.out_path);
        if (!file) throw Error("IoError", "cannot open output file " + *config.out_path, true);
        write(file);
    } else {
        write(fallback);
    }
}

void emit_json(const json& doc, const RunConfig& config, std::ostream& fallback)
{
    if (config.out_path) {
        std::ofstream file(*config.out_path);
        if (!file) throw Error("IoError", "cannot open output file " + *config.out_path, true);
        file << doc.dump(2) << '\n';
    } else {
        fallback << doc.dump(2) << '\n';
    }
}

std::vector<std::string> frame_columns()
{
    std::vector<std::string> cols{"s", "T1", "T2", "T3", "T4"};
    for (int m = 1; m <= 3; ++m)
        for (int c = 1; c <= 4; ++c)
            cols.push_back("M" + std::to_string(m) + "_" + std::to_string(c));
    return cols;
}

void append_frame_row(std::vector<std::optional<double>>& row, const FrameSample& frame)
{
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 4; ++c) row.emplace_back(frame.vectors(i, c));
}

/// Resolves the configured curve source into a ready sampling.
CurveSampling resolve_sampling(const RunConfig& config)
{
    int sources = int(config.expr_text.has_value()) + int(config.builtin_name.has_value()) +
                  int(config.input_path.has_value());
    if (sources != 1)
        throw Error("ConfigError", "exactly one of --expr, --builtin, --input is required", true);

    if (config.input_path) {
        if (config.command == Command::Compare)
            throw Error("ConfigError", "compare needs an analytic curve source", true);
        return ingest_samples(*config.input_path);
    }

    CurveSpec spec = config.expr_text
                         ? parse_curve(*config.expr_text, config.range.value_or(Interval{0.0, 1.0}))
                         : builtin_curve(*config.builtin_name);
    if (config.builtin_name && config.range) spec = with_domain(spec, *config.range);
    return sample_arclength(spec, config.samples);
}

json fit_to_json(const LinearRelationFit& fit)
{
    json j;
    j["mode"] = name(fit.mode);
    switch (fit.mode) {
        case RelationMode::Spherical:
            j["coefficients"] = {fit.coeffs[0], fit.coeffs[1], fit.coeffs[2]};
            break;
        case RelationMode::Rectifying: j["coefficients"] = {fit.coeffs[1], fit.coeffs[2]}; break;
        case RelationMode::Osculating: j["coefficients"] = {fit.coeffs[0], fit.coeffs[2]}; break;
    }
    j["rms_residual"] = fit.rms_residual;
    j["rank_deficient"] = fit.rank_deficient;
    j["plane_distance"] = fit.plane_distance ? json(*fit.plane_distance) : json(nullptr);
    return j;
}

json report_to_json(const ClassificationReport& report)
{
    json j;
    j["spherical"] = report.spherical;
    j["normal"] = report.normal;
    j["rectifying"] = report.rectifying;
    j["osculating"] = report.osculating;
    j["fits"] = {fit_to_json(report.fit_spherical), fit_to_json(report.fit_rectifying),
                 fit_to_json(report.fit_osculating)};
    if (report.sphere) {
        json s;
        s["center"] = {report.sphere->center[0], report.sphere->center[1],
                       report.sphere->center[2], report.sphere->center[3]};
        s["radius"] = report.sphere->radius;
        s["rms_residual"] = report.sphere->rms_residual;
        j["sphere"] = std::move(s);
    } else {
        j["sphere"] = nullptr;
    }
    j["anchor_constancy"] =
        report.anchor_constancy ? json(*report.anchor_constancy) : json(nullptr);
    j["radius_identity_gap"] =
        report.radius_identity_gap ? json(*report.radius_identity_gap) : json(nullptr);
    return j;
}

void run_frames(const RunConfig& config, std::ostream& out)
{
    const CurveSampling samp = resolve_sampling(config);
    const auto frames = default_pt_frames(samp, config.method);

    Table table;
    table.columns = frame_columns();
    for (std::size_t j = 0; j < frames.size(); ++j) {
        std::vector<std::optional<double>> row{samp.arclens[j]};
        append_frame_row(row, frames[j]);
        table.rows.push_back(std::move(row));
    }
    emit(table, config, out);
}

void run_curvatures(const RunConfig& config, std::ostream& out)
{
    const CurveSampling samp = resolve_sampling(config);
    const auto frames = default_pt_frames(samp, config.method);
    const auto k = pt_curvatures(samp, frames);
    const auto frenet = frenet_apparatus(frenet_frames(samp), samp);

    Table table;
    table.columns = {"s", "k1", "k2", "k3", "kappa", "tau", "sigma"};
    for (std::size_t j = 0; j < samp.size(); ++j) {
        std::vector<std::optional<double>> row{samp.arclens[j], k[j].k1, k[j].k2, k[j].k3,
                                               frenet[j].kappa};
        row.push_back(frenet[j].tau_defined ? std::optional<double>(frenet[j].tau) : std::nullopt);
        row.push_back(frenet[j].sigma_defined ? std::optional<double>(frenet[j].sigma)
                                              : std::nullopt);
        table.rows.push_back(std::move(row));
    }
    emit(table, config, out);
}

void run_euler(const RunConfig& config, std::ostream& out)
{
    const CurveSampling samp = resolve_sampling(config);
    const auto frames = default_pt_frames(samp, config.method);
    const auto k = pt_curvatures(samp, frames);
    const auto field = frenet_frames(samp);
    const auto curv = frenet_apparatus(field, samp);
    const auto angles = euler_angle_series(field, frames);
    const auto ode = angle_ode_residuals(angles, curv);

    Table table;
    table.columns = {"s",       "theta", "phi",   "psi",     "gimbal",      "r_k1", "r_k2",
                     "r_k3",    "r_theta", "r_tau", "r_sigma", "r_constraint"};
    for (std::size_t j = 0; j < samp.size(); ++j) {
        std::vector<std::optional<double>> row{samp.arclens[j]};
        if (angles[j].angles) {
            const EulerAngles& a = *angles[j].angles;
            row.insert(row.end(),
                       {a.theta, a.phi, a.psi, a.gimbal ? 1.0 : 0.0});
            const auto res = curvature_relation_residuals(curv[j].kappa, a, k[j]);
            row.insert(row.end(), {res.r_k1, res.r_k2, res.r_k3});
        } else {
            row.insert(row.end(), 7, std::nullopt);
        }
        row.insert(row.end(), {ode[j].r_theta, ode[j].r_tau, ode[j].r_sigma, ode[j].r_constraint});
        table.rows.push_back(std::move(row));
    }
    emit(table, config, out);
}

void run_classify(const RunConfig& config, std::ostream& out)
{
    const CurveSampling samp = resolve_sampling(config);
    const auto frames = default_pt_frames(samp, config.method);
    const auto k = pt_curvatures(samp, frames);
    ClassifyTolerances tol;
    tol.relation_tol = config.tol;
    const ClassificationReport report = classify_curve(samp, frames, k, tol);
    emit_json(report_to_json(report), config, out);
}

void run_synthesize(const RunConfig& config, std::ostream& out)
{
    if (!config.profile)
        throw Error("ConfigError", "synthesize requires --profile \"k1, k2, k3\"", true);
    const double span = config.step * double(config.steps);
    const KProfile profile = parse_kprofile(*config.profile, config.range.value_or(Interval{0.0, span}));

    FrameSample frame0; // identity: T = e1, normals e2, e3, e4
    frame0.flavor = FrameFlavor::ParallelTransport;
    const auto result =
        synthesize_curve(profile, frame0, config.origin, config.step, config.steps);

    Table table;
    table.columns = {"s", "x1", "x2", "x3", "x4"};
    {
        const auto fc = frame_columns();
        table.columns.insert(table.columns.end(), fc.begin() + 1, fc.end());
    }
    for (std::size_t j = 0; j < result.sampling.size(); ++j) {
        const Eigen::Vector4d x = result.sampling.jets[j].value();
        std::vector<std::optional<double>> row{result.sampling.arclens[j], x[0], x[1], x[2], x[3]};
        append_frame_row(row, result.frames[j]);
        table.rows.push_back(std::move(row));
    }
    emit(table, config, out);
}

void run_compare(const RunConfig& config, std::ostream& out)
{
    constexpr int kLevels = 5;

    Table table;
    table.columns = {"h", "max_angle"};
    int n = config.samples;
    for (int level = 0; level < kLevels; ++level) {
        RunConfig cfg = config;
        cfg.samples = n;
        const CurveSampling samp = resolve_sampling(cfg);
        const auto a = default_pt_frames(samp, PropagationMethod::Rk4);
        const auto b = default_pt_frames(samp, PropagationMethod::DoubleReflection);

        double angle = 0.0;
        for (std::size_t j = 0; j < samp.size(); ++j) {
            for (int i = 0; i < 3; ++i) {
                const double gap = (a[j].normal(i) - b[j].normal(i)).norm();
                angle = std::max(angle, 2.0 * std::asin(std::min(1.0, 0.5 * gap)));
            }
        }
        const double h = (samp.arclens.back() - samp.arclens.front()) / double(n - 1);
        table.rows.push_back({h, angle});
        n = 2 * (n - 1) + 1;
    }
    emit(table, config, out);
}

} // namespace

CurveSampling ingest_samples(const std::string& path)
{
    std::ifstream file(path);
    if (!file) throw Error("IoError", "cannot open input file " + path, true);

    std::vector<double> t;
    std::vector<Eigen::Vector4d> x;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::array<double, 5> vals{};
        std::stringstream row(line);
        std::string cell;
        std::size_t idx = 0;
        while (std::getline(row, cell, ',')) {
            if (idx >= 5) throw ParseError(line_no, "expected 5 fields (t,x1,x2,x3,x4)");
            try {
                std::size_t used = 0;
                vals[idx] = std::stod(cell, &used);
                while (used < cell.size() &&
                       std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ParseError(line_no, "cannot parse field " + std::to_string(idx + 1) +
                                              " ('" + cell + "') as a number");
            }
            ++idx;
        }
        if (idx != 5) throw ParseError(line_no, "expected 5 fields (t,x1,x2,x3,x4)");

        if (!t.empty() && !(vals[0] > t.back())) throw NonMonotoneParamError(line_no, vals[0]);
        t.push_back(vals[0]);
        x.emplace_back(vals[1], vals[2], vals[3], vals[4]);
    }
    if (t.size() < kMinSamples) throw TooFewSamplesError(t.size(), kMinSamples);
    return sampling_from_points(t, x);
}

std::vector<FrameSample> default_pt_frames(const CurveSampling& samp, PropagationMethod method)
{
    if (samp.s_jets.empty()) throw MismatchedSeriesError("sampling has no arclength jets");
    std::optional<FrameSample> hint;
    try {
        hint = gram_schmidt_frame(samp.s_jets[0], samp.arclens[0]);
    } catch (const DegenerateFrameError&) {
        // fall back to the pivoted completion
    }
    const Eigen::Vector4d t0 = samp.s_jets[0].derivative(1).normalized();
    return propagate_pt(samp, init_pt_frame(t0, hint), method);
}

int run(const RunConfig& config, std::ostream& err)
{
    try {
        if (config.samples < int(kMinSamples))
            throw Error("ConfigError", "--samples must be at least 9", true);
        if (!(config.tol > 0.0)) throw Error("ConfigError", "--tol must be positive", true);

        switch (config.command) {
            case Command::Frames: run_frames(config, std::cout); break;
            case Command::Curvatures: run_curvatures(config, std::cout); break;
            case Command::Euler: run_euler(config, std::cout); break;
            case Command::Classify: run_classify(config, std::cout); break;
            case Command::Synthesize: run_synthesize(config, std::cout); break;
            case Command::Compare: run_compare(config, std::cout); break;
        }
        return 0;
    } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << '\n';
        return e.is_input_error() ? 1 : 2;
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << '\n';
        return 2;
    }
}

} // namespace curve4d
