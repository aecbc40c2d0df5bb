#include "slinv/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

#include "slinv/analysis.hpp"
#include "slinv/direct.hpp"
#include "slinv/glm.hpp"
#include "slinv/io.hpp"

namespace slinv::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

bool needs_output_file(Command c) {
    return c == Command::Inverse || c == Command::Isospectral || c == Command::Stability;
}

SpectralData load_data(const RunConfig& cfg) {
    json j;
    try {
        j = json::parse(io::read_text(cfg.input));
    } catch (const json::exception& e) {
        throw IoError("'" + cfg.input + "' is not valid JSON: " + e.what());
    }
    SpectralData data = io::spectral_from_json(j);
    if (cfg.shift) data = shift_spectrum(data, *cfg.shift);
    return data;
}

GridFunction load_sigma(const RunConfig& cfg) {
    GridFunction sigma = io::parse_grid_csv(io::read_text(cfg.input));
    if (cfg.shift) sigma = sigma.plus_linear(*cfg.shift);
    return sigma;
}

CharParams char_params(const RunConfig& cfg) { return {cfg.kind, cfg.h.value_or(0.0)}; }

// Diagnostics that accompany a CSV output: "sigma.csv" -> "sigma.json".
fs::path report_path(const std::string& output) {
    fs::path p(output);
    if (p.extension() == ".json") return p.replace_extension(".report.json");
    return p.replace_extension(".json");
}

void emit_json(const RunConfig& cfg, const json& j, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << text;
    } else {
        io::write_text_atomic(cfg.output, text);
    }
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::Validate: {
            const SpectralData data = load_data(cfg);
            const ValidationReport rep = validate_spectral_data(data);
            emit_json(cfg, io::to_json(rep), out);
            if (!rep.ok) {
                err << "error: validation: " << one_line(rep.summary()) << "\n";
                return kValidationFailure;
            }
            return kOk;
        }
        case Command::Direct: {
            const GridFunction sigma = load_sigma(cfg);
            emit_json(cfg, io::to_json(direct_spectral_data(sigma, cfg.count, char_params(cfg))),
                      out);
            return kOk;
        }
        case Command::Inverse: {
            const SpectralData data = load_data(cfg);
            const ReconstructionResult r = reconstruct(data, cfg.grid);
            io::write_text_atomic(cfg.output, io::format_grid_csv(r.sigma));
            io::write_text_atomic(report_path(cfg.output),
                                  io::to_json(r, data.kind(), cfg.output).dump(2) + "\n");
            if (!cfg.dump_kernel.empty()) {
                io::write_text_atomic(cfg.dump_kernel, io::format_kernel_csv(r.kernel));
            }
            return kOk;
        }
        case Command::RoundTrip: {
            const GridFunction sigma = load_sigma(cfg);
            emit_json(cfg, io::to_json(roundtrip_report(sigma, cfg.count, char_params(cfg), cfg.grid)),
                      out);
            return kOk;
        }
        case Command::Isospectral: {
            const SpectralData data = load_data(cfg);
            const Remainders rem = remainders(data);
            const ReconstructionResult r =
                isospectral_member(data.lambda(), rem.beta, data.kind(), cfg.grid);
            const std::size_t n = std::min(cfg.count, data.size());
            const std::vector<double> errs = replay_errors(r, data, n);
            json rep = io::to_json(r, data.kind(), cfg.output);
            rep["replay_errors"] = errs;
            rep["max_replay_error"] = *std::max_element(errs.begin(), errs.end());
            io::write_text_atomic(cfg.output, io::format_grid_csv(r.sigma));
            io::write_text_atomic(report_path(cfg.output), rep.dump(2) + "\n");
            return kOk;
        }
        case Command::Stability: {
            const SpectralData data = load_data(cfg);
            const auto rows = stability_probe(data, cfg.eps, cfg.grid, cfg.seed);
            io::write_text_atomic(cfg.output, io::format_stability_csv(rows));
            io::write_text_atomic(report_path(cfg.output), io::to_json(rows).dump(2) + "\n");
            return kOk;
        }
        case Command::Riesz: {
            const SpectralData data = load_data(cfg);
            const RieszBasis basis =
                dirichlet_at_zero(data.kind()) ? RieszBasis::Sine : RieszBasis::Cosine;
            out << io::format_number(riesz_condition(data.lambda(), basis)) << "\n";
            return kOk;
        }
    }
    return kIoOrConfigError;
}

}  // namespace

void check_config(const RunConfig& cfg) {
    if (cfg.input.empty()) throw StructuralError("--input is required");
    if (needs_output_file(cfg.command) && cfg.output.empty()) {
        throw StructuralError("--output is required for this command");
    }
    if (cfg.grid < 16 || cfg.grid > 4096) {
        throw StructuralError("--grid must lie in [16, 4096]");
    }
    if (cfg.count < 1 || cfg.count > 512) {
        throw StructuralError("--count must lie in [1, 512]");
    }
    if (cfg.command == Command::Stability && cfg.eps.empty()) {
        throw StructuralError("--eps must list at least one value");
    }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check_config(cfg);
        return dispatch(cfg, out, err);
    } catch (const ValidationError& e) {
        err << "error: validation: " << one_line(e.report().summary()) << "\n";
        return kValidationFailure;
    } catch (const NumericalError& e) {
        err << "error: numerical: " << one_line(e.what()) << "\n";
        return kNumericalFailure;
    } catch (const IoError& e) {
        err << "error: io: " << one_line(e.what()) << "\n";
        return kIoOrConfigError;
    } catch (const StructuralError& e) {
        err << "error: config: " << one_line(e.what()) << "\n";
        return kIoOrConfigError;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << "\n";
        return kIoOrConfigError;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Direct and inverse spectral problems for Sturm-Liouville operators with "
                 "singular potentials"};
    app.require_subcommand(1);
    // "-h" would clash with "--h"; subcommands inherit this.
    app.set_help_flag("--help", "Print this help message and exit");

    RunConfig cfg;
    std::string kind = "DD";
    std::string eps = "0.001,0.01";
    double h = 0.0;
    double shift = 0.0;
    std::map<CLI::App*, Command> commands;
    std::vector<std::pair<CLI::Option*, CLI::Option*>> optional_flags;

    const std::vector<std::tuple<const char*, Command, const char*>> specs{
        {"validate", Command::Validate, "Check spectral data JSON; report JSON"},
        {"direct", Command::Direct, "Spectral data JSON from a sigma CSV"},
        {"inverse", Command::Inverse, "Recover sigma CSV (+ diagnostics JSON) from spectral data"},
        {"roundtrip", Command::RoundTrip, "sigma CSV -> data -> sigma; report JSON"},
        {"isospectral", Command::Isospectral,
         "Isospectral member for the data's lambda and beta = alpha - 1"},
        {"stability", Command::Stability, "Perturbation probe; CSV eps,data_norm,sigma_error"},
        {"riesz", Command::Riesz, "Gram condition number of the data's sine/cosine system"},
    };
    for (const auto& [name, command, help] : specs) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands[sub] = command;
        sub->add_option("--input", cfg.input, "Input file (sigma CSV or spectral JSON)");
        sub->add_option("--output", cfg.output, "Output file");
        sub->add_option("--grid", cfg.grid, "Grid intervals M")->capture_default_str();
        sub->add_option("--count", cfg.count, "Number of eigenvalues K")->capture_default_str();
        sub->add_option("--kind", kind, "Boundary kind DD|NT|ND|DN for sigma inputs")
            ->capture_default_str();
        auto* ho = sub->add_option("--h", h, "Third-type parameter at x=1 (NT, DN)");
        auto* so = sub->add_option("--shift", shift, "Add C to the potential (sigma + C x)");
        sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        sub->add_option("--eps", eps, "Comma-separated perturbation sizes")->capture_default_str();
        sub->add_option("--dump-kernel", cfg.dump_kernel, "Write the kernel as CSV i,j,k");
        optional_flags.emplace_back(ho, so);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: config: " << one_line(e.what()) << "\n";
        return kIoOrConfigError;
    }

    try {
        for (const auto& [sub, command] : commands) {
            if (sub->parsed()) cfg.command = command;
        }
        for (const auto& [ho, so] : optional_flags) {
            if (ho->count() > 0) cfg.h = h;
            if (so->count() > 0) cfg.shift = shift;
        }
        cfg.kind = parse_boundary_kind(kind);
        cfg.eps = io::parse_number_list(eps);
    } catch (const Error& e) {
        err << "error: config: " << one_line(e.what()) << "\n";
        return kIoOrConfigError;
    }
    return run(cfg, out, err);
}

}  // namespace slinv::cli
