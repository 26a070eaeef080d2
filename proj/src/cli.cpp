#include "cheshire/cli.hpp"

#include "cheshire/bundled.hpp"
#include "cheshire/csv.hpp"
#include "cheshire/quantum_weak.hpp"
#include "cheshire/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

namespace cheshire::cli {

namespace {

namespace fs = std::filesystem;

struct CommandOptions {
    std::string scenario_path;
    std::string output_path;
    std::vector<std::string> overrides;
};

// A scenario file on disk wins over a bundled scenario of the same name.
std::optional<std::string> load_scenario_text(const std::string &source, std::ostream &err) {
    std::error_code ec;
    if (fs::is_regular_file(source, ec)) {
        std::ifstream in(source, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        if (!in.good() && !in.eof()) {
            err << source << ": error: cannot read scenario file\n";
            return std::nullopt;
        }
        return text.str();
    }
    if (const auto bundled = find_bundled(source)) {
        return std::string(*bundled);
    }
    err << source << ": error: no such scenario file or bundled scenario\n";
    return std::nullopt;
}

// Returns the parsed scenario, or the exit status to fail with.
std::variant<Scenario, int> load_scenario(const CommandOptions &opts, std::ostream &err) {
    const auto text = load_scenario_text(opts.scenario_path, err);
    if (!text) {
        return kIoFailure;
    }
    try {
        return parse_scenario(*text, opts.overrides);
    } catch (const ParseError &e) {
        err << opts.scenario_path << ":" << e.line() << ": error: " << e.message() << '\n';
        return kBadInput;
    }
}

std::string format_complex(Complex z) {
    // Adding 0.0 turns a negative zero into +0.
    const double re = z.real() + 0.0;
    const double im = z.imag() + 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", re, im);
    return buf;
}

int cmd_simulate(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    auto loaded = load_scenario(opts, err);
    if (const int *status = std::get_if<int>(&loaded)) {
        return *status;
    }
    const SweepResult result = run_sweep(std::get<Scenario>(loaded));

    try {
        if (opts.output_path.empty()) {
            write_csv(result, out);
        } else {
            std::ofstream file(opts.output_path, std::ios::binary | std::ios::trunc);
            if (!file) {
                err << opts.output_path << ": error: cannot open for writing\n";
                return kIoFailure;
            }
            write_csv(result, file);
        }
    } catch (const std::ios_base::failure &) {
        err << (opts.output_path.empty() ? "<stdout>" : opts.output_path)
            << ": error: write failed\n";
        return kIoFailure;
    }
    return kOk;
}

int cmd_weak_values(std::ostream &out) {
    const CheshireWeakValues wv = cheshire_weak_values();
    out << "Pi_L: " << format_complex(wv.path_left) << '\n'
        << "Pi_R: " << format_complex(wv.path_right) << '\n'
        << "sigma_x Pi_L: " << format_complex(wv.flip_left) << '\n'
        << "sigma_x Pi_R: " << format_complex(wv.flip_right) << '\n';
    return kOk;
}

int cmd_compare(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    auto loaded = load_scenario(opts, err);
    if (const int *status = std::get_if<int>(&loaded)) {
        return *status;
    }
    Scenario scenario = std::get<Scenario>(loaded);
    scenario.models = {true, true};
    const SweepResult result = run_sweep(scenario);

    double max_diff = 0.0;
    double worst_phi = result.rows.empty() ? 0.0 : result.rows.front().phi;
    for (const auto &row : result.rows) {
        const double diff = std::abs(row.quantum_d1 - row.d1_postselected);
        if (diff > max_diff) {
            max_diff = diff;
            worst_phi = row.phi;
        }
    }

    char buf[128];
    std::snprintf(buf, sizeof buf, "rows: %zu\nmax |quantum_d1 - d1_postselected|: %.6e\nat phi: %.17g\n",
                  result.rows.size(), max_diff, worst_phi);
    out << buf;
    if (max_diff > kCompareTolerance) {
        std::snprintf(buf, sizeof buf,
                      "error: models differ by %.6e at phi = %.17g (the quantum model has no "
                      "imperfections)\n",
                      max_diff, worst_phi);
        err << opts.scenario_path << ": " << buf;
        return kModelMismatch;
    }
    return kOk;
}

int cmd_figures(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
    const fs::path dir(opts.output_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        err << opts.output_path << ": error: cannot create output directory\n";
        return kIoFailure;
    }

    for (const auto &bundled : bundled_scenarios()) {
        if (!bundled.figure_panel) {
            continue;
        }
        const SweepResult result = run_sweep(parse_scenario(bundled.text));
        const fs::path target = dir / (std::string(bundled.name) + ".csv");
        std::ofstream file(target, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << target.string() << ": error: cannot open for writing\n";
            return kIoFailure;
        }
        try {
            write_csv(result, file);
        } catch (const std::ios_base::failure &) {
            err << target.string() << ": error: write failed\n";
            return kIoFailure;
        }
        out << target.string() << '\n';
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-arm polarization interferometer: classical and pre/post-selected quantum "
                 "models",
                 "cheshire"};
    app.require_subcommand(1);

    CommandOptions opts;

    auto *simulate = app.add_subcommand("simulate", "Sweep the phase and write detector CSV");
    simulate->add_option("-s,--scenario", opts.scenario_path, "Scenario file or bundled name")
        ->required();
    simulate->add_option("-o,--output", opts.output_path, "CSV file (default: stdout)");
    simulate->add_option("--override", opts.overrides, "Extra directive as key=value")
        ->allow_extra_args(false);

    auto *weak = app.add_subcommand("weak-values", "Print the four Cheshire-cat weak values");

    auto *compare =
        app.add_subcommand("compare", "Compare the quantum and classical post-selected signals");
    compare->add_option("-s,--scenario", opts.scenario_path, "Scenario file or bundled name")
        ->required();
    compare->add_option("--override", opts.overrides, "Extra directive as key=value")
        ->allow_extra_args(false);

    auto *figures = app.add_subcommand("figures", "Write one CSV per bundled figure panel");
    figures->add_option("-o,--output", opts.output_path, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int status = app.exit(e, out, err);
        return status == 0 ? kOk : kBadInput;
    }

    if (simulate->parsed()) {
        return cmd_simulate(opts, out, err);
    }
    if (weak->parsed()) {
        return cmd_weak_values(out);
    }
    if (compare->parsed()) {
        return cmd_compare(opts, out, err);
    }
    if (figures->parsed()) {
        return cmd_figures(opts, out, err);
    }
    return kBadInput;
}

} // namespace cheshire::cli
