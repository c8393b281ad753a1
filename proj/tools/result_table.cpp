#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace lz::cli {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string cell_text(const Cell& c) {
    if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (auto* d = std::get_if<double>(&c)) return format_real(*d);
    return std::get<std::string>(c);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Integers and reals are told apart by their spelling, as emitted.
Cell parse_cell(const std::string& s) {
    if (s.empty()) return s;
    if (s == "nan" || s == "inf" || s == "-inf") return parse_real(s);
    std::size_t used = 0;
    if (s.find_first_of(".eE") == std::string::npos) {
        try {
            const long long v = std::stoll(s, &used);
            if (used == s.size()) return std::int64_t(v);
        } catch (const std::exception&) {
        }
    }
    try {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return s;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    // keep reals recognizable as reals
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("ResultTable: row width does not match columns");
    rows.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : metadata)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    metadata.emplace_back(key, value);
}

std::optional<std::string> ResultTable::meta(const std::string& key) const {
    for (const auto& kv : metadata)
        if (kv.first == key) return kv.second;
    return std::nullopt;
}

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (const auto& [k, v] : metadata) os << "# " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << '\n';
    }
    return os.str();
}

std::string ResultTable::to_json() const {
    using nlohmann::json;
    std::ostringstream os;
    os << "{\n  \"metadata\": {";
    for (std::size_t i = 0; i < metadata.size(); ++i)
        os << (i ? ", " : "") << json(metadata[i].first).dump() << ": " << json(metadata[i].second).dump();
    os << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? ", " : "") << json(columns[i]).dump();
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << (r ? ",\n    [" : "\n    [");
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            os << (i ? ", " : "");
            const Cell& c = rows[r][i];
            if (auto* d = std::get_if<double>(&c); d && !std::isfinite(*d))
                os << json(format_real(*d)).dump();  // JSON has no nan/inf
            else if (std::holds_alternative<std::string>(c))
                os << json(std::get<std::string>(c)).dump();
            else
                os << cell_text(c);
        }
        os << "]";
    }
    os << (rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

std::string ResultTable::to_plot_data() const {
    std::ostringstream os;
    os << "#";
    for (const auto& c : columns) os << ' ' << c;
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string t = cell_text(row[i]);
            for (char& ch : t)
                if (ch == ' ') ch = '_';
            os << (i ? " " : "") << (t.empty() ? "-" : t);
        }
        os << '\n';
    }
    return os.str();
}

ResultTable ResultTable::from_csv(const std::string& text) {
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!header && line.rfind("# ", 0) == 0) {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) t.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        if (!header) {
            t.columns = split_csv_line(line);
            header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& f : split_csv_line(line)) row.push_back(parse_cell(f));
        t.add_row(std::move(row));
    }
    return t;
}

ResultTable ResultTable::from_json(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    ResultTable t;
    for (const auto& [k, v] : j.at("metadata").items()) t.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("columns")) t.columns.push_back(c.get<std::string>());
    for (const auto& r : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& v : r) {
            if (v.is_number_integer()) row.push_back(v.get<std::int64_t>());
            else if (v.is_number()) row.push_back(v.get<double>());
            else row.push_back(parse_cell(v.get<std::string>()));
        }
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace lz::cli
