#include "run.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace analyze {

using tsfloquet::Error;
using tsfloquet::ErrorCode;

Report run(const ConfigFile& config, const Flags& flags) {
    const auto start = std::chrono::steady_clock::now();
    ConfigFile cfg = config;
    if (flags.tol) cfg.tol = flags.tol;
    const tsfloquet::SystemSpec spec = build_system(cfg);

    tsfloquet::AnalysisOptions options;
    options.n = flags.n.value_or(cfg.n.value_or(default_n(spec.ts)));
    options.shi = flags.shi || cfg.shi;
    const tsfloquet::FloquetReport result = tsfloquet::analyze(spec, options);
    Report report = make_report(result, spec, cfg.source);

    if (flags.oracle || cfg.oracle) {
        const std::size_t n = options.shi ? 2 * (options.n / 2) + 1 : options.n;
        const tsfloquet::CheckResult check = tsfloquet::cross_check(spec, n, 1e-6);
        report.oracle = OracleDeltas{check.a_oracle, check.b_oracle, check.delta_a, check.delta_b};
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

int exit_code(const Report& report) {
    if (report.verdict == "stable" || report.verdict == "exponentially stable") return kExitStable;
    if (report.verdict == "unstable") return kExitUnstable;
    return kExitUndetermined;
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonpositivePeriod:
        case ErrorCode::EndpointNotCovered:
        case ErrorCode::OverlappingSegments:
        case ErrorCode::DegenerateInterval:
        case ErrorCode::OutOfPeriod:
        case ErrorCode::PointNotInTimeScale:
        case ErrorCode::SyntaxError:
        case ErrorCode::ArityError:
        case ErrorCode::NonConstantExponent:
        case ErrorCode::NonConstantArgument:
        case ErrorCode::ParseError:
        case ErrorCode::ValidationError:
        case ErrorCode::InvalidSystem:
        case ErrorCode::NegativeQOnDense:
        case ErrorCode::NotRegressive:
        case ErrorCode::NotContinuousScale:
        case ErrorCode::BNotOne:
            return kExitBadInput;
        case ErrorCode::CheckFailed:
            return kExitCheckFailed;
        default:
            return kExitNumerical;
    }
}

namespace {

struct Outcome {
    std::string text;
    std::optional<nlohmann::ordered_json> json;
    std::string diagnostic;
    int code = kExitInternal;
};

Outcome run_file(const std::filesystem::path& path, const Flags& flags) {
    Outcome o;
    try {
        const ConfigFile cfg = load_config(path);
        const Report report = run(cfg, flags);
        if (flags.json || cfg.json) {
            o.json = to_json(report);
        } else {
            o.text = render_text(report);
        }
        o.code = exit_code(report);
    } catch (const Error& e) {
        o.diagnostic = path.string() + ": " + e.what();
        o.code = exit_code(e.code());
    } catch (const std::exception& e) {
        o.diagnostic = path.string() + ": internal error: " + e.what();
        o.code = kExitInternal;
    }
    return o;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag) {
    CLI::App app{"Floquet multipliers and stability of x^ΔΔ + p x^Δ + q x = 0 on a periodic time scale"};
    std::string config_path;
    std::string batch_dir;
    Flags flags;
    std::size_t n = 0;
    double tol = 0.0;
    app.add_option("config", config_path, "System description (key = value lines)");
    auto* n_opt = app.add_option("--n", n, "Number of series terms beyond A_0");
    auto* tol_opt = app.add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_flag("--oracle", flags.oracle, "Cross-check against the monodromy matrix");
    app.add_flag("--shi", flags.shi, "Continuous B = 1 formula (single dense period only)");
    app.add_flag("--json", flags.json, "Machine-readable output");
    app.add_option("--batch", batch_dir, "Analyse every *.cfg file in a directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int rc = app.exit(e, help, help);
        (rc == 0 ? out : diag) << help.str();
        return rc == 0 ? 0 : kExitBadInput;
    }
    if (n_opt->count() > 0) flags.n = n;
    if (tol_opt->count() > 0) flags.tol = tol;

    std::vector<std::filesystem::path> files;
    if (!batch_dir.empty()) {
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(batch_dir, ec)) {
            if (entry.is_regular_file() && entry.path().extension() == ".cfg") files.push_back(entry.path());
        }
        if (ec) {
            diag << batch_dir << ": " << ec.message() << "\n";
            return kExitBadInput;
        }
        std::sort(files.begin(), files.end());
    }
    if (!config_path.empty()) files.insert(files.begin(), config_path);
    if (files.empty()) {
        diag << "analyze: a config file or --batch DIR is required\n" << app.help();
        return kExitBadInput;
    }

    std::vector<Outcome> outcomes;
    if (files.size() == 1) {
        outcomes.push_back(run_file(files.front(), flags));
    } else {
        std::vector<std::future<Outcome>> jobs;
        for (const auto& f : files) jobs.push_back(std::async(std::launch::async, run_file, f, flags));
        for (auto& j : jobs) outcomes.push_back(j.get());
    }

    int code = 0;
    const bool batch = files.size() > 1;
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Outcome& o = outcomes[i];
        code = std::max(code, o.code);
        if (!o.diagnostic.empty()) diag << o.diagnostic << "\n";
        if (o.json) {
            if (batch) {
                array.push_back(*o.json);
            } else {
                out << o.json->dump(2) << "\n";
            }
        } else if (!o.text.empty()) {
            if (batch) out << "== " << files[i].string() << " ==\n";
            out << o.text;
            if (batch && i + 1 < outcomes.size()) out << "\n";
        }
    }
    if (batch && !array.empty()) out << array.dump(2) << "\n";
    return code;
}

}  // namespace analyze
