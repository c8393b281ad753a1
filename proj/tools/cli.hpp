#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lz::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular table with ordered metadata. Reals print with 17 significant
/// digits; complexes are stored by the caller as re/im column pairs.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_row(std::vector<Cell> row);
    void set_meta(const std::string& key, const std::string& value);
    std::optional<std::string> meta(const std::string& key) const;

    /// Metadata as leading "# key = value" lines, then a header row.
    std::string to_csv() const;
    std::string to_json() const;
    /// Space-separated columns under a "# name ..." header line.
    std::string to_plot_data() const;

    static ResultTable from_csv(const std::string& text);
    static ResultTable from_json(const std::string& text);
};

std::string format_real(double v);

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct CommandOutput {
    ResultTable table;
    std::vector<Check> checks;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// key = value lines; '#' starts a comment. Keys are flat, optionally
/// prefixed by an experiment name ("exp-thm11.T = 1e7").
std::map<std::string, std::string> parse_config(std::istream& in);

/// Parameter lookup with precedence flag > "<command>.key" > "key" > default.
class Params {
public:
    Params(std::string command, std::map<std::string, std::string> flags,
           std::map<std::string, std::string> config = {});

    bool has(const std::string& key) const;
    std::optional<std::string> raw(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_seed() const { return static_cast<std::uint64_t>(get_int("seed", 1)); }
    /// Comma-separated reals; "lo:hi:n" expands to n evenly spaced values;
    /// "pi" and "-pi" multiples such as "pi/2" are accepted.
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    const std::string& command() const { return command_; }

private:
    std::string command_;
    std::map<std::string, std::string> flags_;
    std::map<std::string, std::string> config_;
};

double parse_real(const std::string& text);

struct CommandSpec {
    std::string name;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> params;  // name, help
    std::function<CommandOutput(const Params&)> run;
};

const std::vector<CommandSpec>& command_specs();

/// Runs a subcommand by name.
CommandOutput run_command(const std::string& name, const Params& params);

/// Full command-line entry point. Tables go to `out` (or --out); the failure
/// list, warnings and the run environment go to `err`.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lz::cli
