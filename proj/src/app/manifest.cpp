#include "qbf/app.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qbf {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw std::invalid_argument("manifest: bad value '" + std::string(value) + "' for " + std::string(key));
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        bad_value(key, value);
    }
    return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        bad_value(key, value);
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string serialize_manifest(const RunManifest& m) {
    std::ostringstream out;
    out << "# qbf run manifest\n";
    for (const auto& in : m.inputs) {
        out << "input = " << in.string() << '\n';
    }
    const SolverConfig& s = m.solver;
    out << "variant = " << to_string(m.variant) << '\n'
        << "missing_ratio = " << format_double(m.missing_ratio) << '\n'
        << "seed = " << m.seed << '\n'
        << "lambda = " << (s.lambda ? format_double(*s.lambda) : std::string("auto")) << '\n'
        << "mu0 = " << format_double(s.mu0) << '\n'
        << "mu_max = " << format_double(s.mu_max) << '\n'
        << "beta = " << format_double(s.beta) << '\n'
        << "d0 = " << s.d0 << '\n'
        << "tol = " << format_double(s.tol) << '\n'
        << "max_iters = " << s.max_iters << '\n'
        << "rank_drop_threshold = " << format_double(s.rank_drop_threshold) << '\n'
        << "solver_seed = " << s.seed << '\n'
        << "output_dir = " << m.output_dir.string() << '\n';
    return out.str();
}

RunManifest parse_manifest(std::string_view text) {
    RunManifest m;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("manifest: expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "input") {
            m.inputs.emplace_back(std::string(value));
        } else if (key == "variant") {
            const auto v = parse_variant(value);
            if (!v) {
                bad_value(key, value);
            }
            m.variant = *v;
        } else if (key == "missing_ratio") {
            m.missing_ratio = parse_double(key, value);
        } else if (key == "seed") {
            m.seed = parse_int<std::uint64_t>(key, value);
        } else if (key == "lambda") {
            if (value == "auto") {
                m.solver.lambda.reset();
            } else {
                m.solver.lambda = parse_double(key, value);
            }
        } else if (key == "mu0") {
            m.solver.mu0 = parse_double(key, value);
        } else if (key == "mu_max") {
            m.solver.mu_max = parse_double(key, value);
        } else if (key == "beta") {
            m.solver.beta = parse_double(key, value);
        } else if (key == "d0") {
            m.solver.d0 = parse_int<Index>(key, value);
        } else if (key == "tol") {
            m.solver.tol = parse_double(key, value);
        } else if (key == "max_iters") {
            m.solver.max_iters = parse_int<int>(key, value);
        } else if (key == "rank_drop_threshold") {
            m.solver.rank_drop_threshold = parse_double(key, value);
        } else if (key == "solver_seed") {
            m.solver.seed = parse_int<std::uint64_t>(key, value);
        } else if (key == "output_dir") {
            m.output_dir = std::string(value);
        } else {
            throw std::invalid_argument("manifest: unknown key '" + std::string(key) + "'");
        }
    }
    return m;
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("manifest: cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    std::ofstream out(path);
    out << serialize_manifest(m);
    if (!out) {
        throw std::runtime_error("manifest: cannot write " + path.string());
    }
}

SolverConfig SolverOverrides::resolve(NormVariant variant, std::uint64_t seed) const {
    SolverConfig cfg = SolverConfig::defaults_for(variant);
    cfg.lambda = lambda;
    if (mu0) {
        cfg.mu0 = *mu0;
    }
    if (beta) {
        cfg.beta = *beta;
    }
    if (tol) {
        cfg.tol = *tol;
    }
    if (max_iters) {
        cfg.max_iters = *max_iters;
    }
    if (d0) {
        cfg.d0 = *d0;
    }
    if (rank_drop_threshold) {
        cfg.rank_drop_threshold = *rank_drop_threshold;
    }
    cfg.seed = seed;
    return cfg;
}

} // namespace qbf
