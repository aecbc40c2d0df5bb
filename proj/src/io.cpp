#include "slinv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace slinv::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view s, const char* what) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw IoError(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> number_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw IoError(std::string("spectral JSON: missing array '") + key + "'");
    }
    std::vector<double> out;
    out.reserve(j.at(key).size());
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) {
            throw IoError(std::string("spectral JSON: non-numeric entry in '") + key + "'");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

json values_array(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

}  // namespace

std::string format_number(double x, int digits) {
    char buf[64];
    if (x == 0.0) x = 0.0;  // no "-0" in outputs
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

GridFunction parse_grid_csv(std::string_view text) {
    std::vector<double> xs, vals;
    bool header = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;
        if (!header) {
            if (line != "x,sigma") throw IoError("grid CSV: expected header 'x,sigma'");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw IoError("grid CSV: line " + std::to_string(line_no) + " must have two fields");
        }
        xs.push_back(parse_double(line.substr(0, comma), "x"));
        vals.push_back(parse_double(line.substr(comma + 1), "sigma"));
    }
    if (!header) throw IoError("grid CSV: empty input");
    if (xs.size() < 2) throw IoError("grid CSV: too few rows");
    const std::size_t M = xs.size() - 1;
    for (std::size_t i = 0; i <= M; ++i) {
        const double expect = static_cast<double>(i) / static_cast<double>(M);
        if (std::abs(xs[i] - expect) > 1e-9) {
            throw IoError("grid CSV: row " + std::to_string(i) + " has x=" + format_number(xs[i]) +
                          ", expected uniform node " + format_number(expect));
        }
    }
    return GridFunction(std::move(vals));
}

std::string format_grid_csv(const GridFunction& g) {
    std::string out = "x,sigma\n";
    for (std::size_t i = 0; i <= g.intervals(); ++i) {
        out += format_number(g.node(i), 15);
        out += ',';
        out += format_number(g[i], 15);
        out += '\n';
    }
    return out;
}

SpectralData spectral_from_json(const json& j) {
    if (!j.is_object()) throw IoError("spectral JSON: expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw IoError("spectral JSON: missing string 'kind'");
    }
    const BoundaryKind kind = parse_boundary_kind(j.at("kind").get<std::string>());
    std::optional<double> h;
    if (j.contains("h") && !j.at("h").is_null()) {
        if (!j.at("h").is_number()) throw IoError("spectral JSON: 'h' must be a number");
        h = j.at("h").get<double>();
    }
    return SpectralData(kind, number_array(j, "lambda"), number_array(j, "alpha"), h);
}

json to_json(const SpectralData& data) {
    json j;
    j["kind"] = std::string(to_string(data.kind()));
    j["lambda"] = values_array(data.lambda());
    j["alpha"] = values_array(data.alpha());
    if (data.h()) j["h"] = *data.h();
    return j;
}

json to_json(const ValidationReport& report) {
    json v = json::array();
    for (const Violation& x : report.violations) {
        v.push_back({{"code", std::string(x.code_name())},
                     {"condition", std::string(x.condition())},
                     {"index", x.index},
                     {"message", x.message()}});
    }
    return {{"ok", report.ok},
            {"violations", v},
            {"ell2_mu", report.ell2_mu},
            {"ell2_beta", report.ell2_beta}};
}

json to_json(const ReconstructionResult& result, BoundaryKind kind, const std::string& sigma_csv) {
    json j;
    j["kind"] = std::string(to_string(kind));
    j["grid"] = result.sigma.intervals();
    j["sigma"] = values_array(result.sigma.values());
    j["sigma_csv"] = sigma_csv.empty() ? json(nullptr) : json(sigma_csv);
    j["h"] = result.h ? json(*result.h) : json(nullptr);
    j["positivity_margin"] = result.positivity_margin;
    j["kernel_hs_norm"] = result.kernel_hs_norm;
    j["phi"] = values_array(result.phi.values());
    return j;
}

json to_json(const RoundTripReport& report) {
    json j;
    j["grid_in"] = report.sigma_in.intervals();
    j["grid_out"] = report.sigma_out.intervals();
    j["sigma_in"] = values_array(report.sigma_in.values());
    j["sigma_out"] = values_array(report.sigma_out.values());
    j["h_out"] = report.h_out ? json(*report.h_out) : json(nullptr);
    j["gauge_constant"] = report.gauge_constant;
    j["l2_error"] = report.l2_error;
    j["spectral_replay_errors"] = report.spectral_replay_errors;
    j["margin"] = report.margin;
    return j;
}

json to_json(const std::vector<StabilityRow>& rows) {
    json a = json::array();
    for (const StabilityRow& r : rows) {
        a.push_back({{"eps", r.eps},
                     {"data_norm", r.data_perturbation_norm},
                     {"sigma_error", r.sigma_error}});
    }
    return a;
}

std::string format_stability_csv(const std::vector<StabilityRow>& rows) {
    std::string out = "eps,data_norm,sigma_error\n";
    for (const StabilityRow& r : rows) {
        out += format_number(r.eps) + ',' + format_number(r.data_perturbation_norm) + ',' +
               format_number(r.sigma_error) + '\n';
    }
    return out;
}

std::string format_kernel_csv(const TriangularKernel& kernel) {
    std::string out = "i,j,k\n";
    for (std::size_t i = 0; i <= kernel.grid(); ++i) {
        const auto row = kernel.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_number(row[j]) + '\n';
        }
    }
    return out;
}

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_double(text.substr(0, comma), "number"));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

}  // namespace slinv::io
