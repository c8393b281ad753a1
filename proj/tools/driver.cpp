#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"
#include "largezeta/common.hpp"

namespace lz::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double plain_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

}  // namespace

double parse_real(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw UsageError("empty number");
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    const auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) return plain_real(s);
    // [sign][coef[*]]pi[/den]
    double sign = 1;
    std::string head = s.substr(0, pi_at);
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        sign = head[0] == '-' ? -1 : 1;
        head.erase(0, 1);
    }
    if (!head.empty() && head.back() == '*') head.pop_back();
    const double coef = head.empty() ? 1.0 : plain_real(head);
    std::string tail = s.substr(pi_at + 2);
    double den = 1;
    if (!tail.empty()) {
        if (tail[0] != '/') throw UsageError("not a number: '" + s + "'");
        den = plain_real(tail.substr(1));
    }
    return sign * coef * std::numbers::pi / den;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Params::Params(std::string command, std::map<std::string, std::string> flags, std::map<std::string, std::string> config)
    : command_(std::move(command)), flags_(std::move(flags)), config_(std::move(config)) {}

std::optional<std::string> Params::raw(const std::string& key) const {
    if (auto it = flags_.find(key); it != flags_.end()) return it->second;
    if (auto it = config_.find(command_ + "." + key); it != config_.end()) return it->second;
    if (auto it = config_.find(key); it != config_.end()) return it->second;
    return std::nullopt;
}

bool Params::has(const std::string& key) const { return raw(key).has_value(); }

std::string Params::get_string(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
}

double Params::get_double(const std::string& key, double fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    try {
        return parse_real(*v);
    } catch (const UsageError& e) {
        throw UsageError(key + ": " + e.what());
    }
}

double Params::require_double(const std::string& key) const {
    if (!has(key)) throw UsageError(command_ + ": missing required parameter --" + key);
    return get_double(key, 0);
}

std::int64_t Params::get_int(const std::string& key, std::int64_t fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    const double d = get_double(key, 0);
    if (d != std::floor(d) || std::abs(d) > 9.2e18) throw UsageError(key + ": expected an integer, got '" + *v + "'");
    return static_cast<std::int64_t>(d);
}

std::vector<double> Params::get_list(const std::string& key, const std::vector<double>& fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    std::vector<double> out;
    try {
        if (v->find(':') != std::string::npos) {
            const auto parts = split(*v, ':');
            if (parts.size() < 3 || parts.size() > 4) throw UsageError("grid must be lo:hi:n[:log]");
            const double lo = parse_real(parts[0]), hi = parse_real(parts[1]);
            const double n = parse_real(parts[2]);
            const bool geometric = parts.size() == 4 && parts[3] == "log";
            if (parts.size() == 4 && !geometric) throw UsageError("grid spacing must be 'log'");
            if (n < 1 || n != std::floor(n) || n > 1e7) throw UsageError("grid count must be a positive integer");
            if (geometric && !(lo > 0 && hi > 0)) throw UsageError("log grid needs positive ends");
            const auto count = static_cast<std::size_t>(n);
            for (std::size_t i = 0; i < count; ++i) {
                const double f = count == 1 ? 0.0 : double(i) / double(count - 1);
                out.push_back(geometric ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
            }
        } else {
            for (const auto& item : split(*v, ',')) out.push_back(parse_real(item));
        }
    } catch (const UsageError& e) {
        throw UsageError(key + ": " + e.what());
    }
    if (out.empty()) throw UsageError(key + ": empty list");
    return out;
}

CommandOutput run_command(const std::string& name, const Params& params) {
    for (const auto& spec : command_specs())
        if (spec.name == name) return spec.run(params);
    throw UsageError("unknown command: " + name);
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computations around large values of zeta sums and friable integers", "largezeta"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, format = "csv", out_path, plot_dir;
    std::optional<std::string> seed, tolerance, trunc;
    unsigned threads = 0;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output file (default: $LARGEZETA_OUT_DIR/<command>.<format> or stdout)");
    app.add_option("--seed", seed, "master seed for every randomized step");
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");
    app.add_option("--tolerance", tolerance, "numerical tolerance");
    app.add_option("--trunc", trunc, "truncation limit for certified sums");
    app.add_option("--plot-dir", plot_dir, "directory for plot data files");

    std::map<std::string, std::map<std::string, std::string>> sub_values;
    for (const auto& spec : command_specs()) {
        auto* sub = app.add_subcommand(spec.name, spec.summary);
        auto& values = sub_values[spec.name];
        for (const auto& [pname, help] : spec.params) {
            sub->add_option_function<std::string>("--" + pname, [&values, pname](const std::string& v) { values[pname] = v; },
                                                  help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        std::map<std::string, std::string> config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot open config " + config_path);
            config = parse_config(in);
        }
        auto flags = sub_values[command];
        if (seed) flags["seed"] = *seed;
        if (tolerance) flags["tolerance"] = *tolerance;
        if (trunc) flags["trunc"] = *trunc;
        set_thread_count(threads);

        const Params params(command, flags, config);
        CommandOutput result = run_command(command, params);
        result.table.set_meta("command", command);
        result.table.set_meta("program", "largezeta 1.0");
        result.table.set_meta("arithmetic", "binary64; double-double logarithms and phase reduction");
        if (!config_path.empty()) result.table.set_meta("config", config_path);

        const std::string text = format == "json" ? result.table.to_json() : result.table.to_csv();
        std::string dest = out_path;
        if (dest.empty())
            if (const char* dir = std::getenv("LARGEZETA_OUT_DIR"); dir && *dir)
                dest = (std::filesystem::path(dir) / (command + "." + format)).string();
        if (dest.empty()) {
            out << text;
        } else {
            if (auto parent = std::filesystem::path(dest).parent_path(); !parent.empty())
                std::filesystem::create_directories(parent);
            std::ofstream f(dest, std::ios::binary);
            if (!f) throw UsageError("cannot write " + dest);
            f << text;
        }
        if (!plot_dir.empty()) {
            std::filesystem::create_directories(plot_dir);
            std::ofstream f(std::filesystem::path(plot_dir) / (command + ".dat"), std::ios::binary);
            f << result.table.to_plot_data();
        }

        // Run environment stays out of the table so that tables are
        // identical across thread counts.
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        err << "# threads = " << thread_count() << ", wall_time_s = " << wall << '\n';

        nlohmann::json failures = nlohmann::json::array();
        for (const auto& c : result.checks)
            if (!c.passed) failures.push_back({{"check", c.name}, {"detail", c.detail}});
        if (!failures.empty()) {
            err << nlohmann::json{{"command", command}, {"failures", failures}}.dump() << '\n';
            return 1;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json failure = {{"command", command}, {"error", e.what()}};
        err << failure.dump() << '\n';
        return 3;
    }
}

}  // namespace lz::cli
