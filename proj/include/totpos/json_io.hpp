#pragma once

#include "check.hpp"
#include "matrix.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

using json = nlohmann::ordered_json;

// Malformed input, located by 1-based line and column.
class InputError : public std::runtime_error {
public:
    InputError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(what), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::string diagnostic(const std::string& source) const {
        return source + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what();
    }

private:
    std::size_t line_, column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Position of the first byte of the element at `path` (rows, then entry),
// found by rescanning: nlohmann keeps no source offsets after parsing.
inline std::size_t entry_offset(const std::string& text, std::size_t row, std::optional<std::size_t> col) {
    const auto key = text.find("\"rows\"");
    if (key == std::string::npos) return 0;
    std::size_t i = text.find('[', key);
    int depth = 0;
    std::size_t r = 0, c = 0;
    bool in_string = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_string) {
            if (ch == '\\') ++i;
            else if (ch == '"') in_string = false;
            continue;
        }
        auto at_target = [&] { return depth == 2 && r == row && (!col || c == *col); };
        if (ch == '[') {
            ++depth;
            if (depth == 2 && r == row && !col) return i;
            continue;
        }
        if (ch == ']') {
            if (--depth == 0) break;
            if (depth == 1) c = 0;
            continue;
        }
        if (ch == ',') {
            if (depth == 1) ++r;
            if (depth == 2) ++c;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (at_target()) return i;
        if (ch == '"') in_string = true;
    }
    return key;
}

}  // namespace detail

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::locate(text, e.byte > 0 ? e.byte - 1 : 0);
        // Drop nlohmann's own "[json.exception...] parse error at line L, column C: " prefix.
        std::string msg = e.what();
        const auto col_at = msg.find("column ");
        const auto cut = col_at == std::string::npos ? std::string::npos : msg.find(": ", col_at);
        throw InputError(line, col, cut == std::string::npos ? msg : msg.substr(cut + 2));
    }
}

inline RationalMatrix matrix_from_json(const json& j, const std::string& text = "") {
    auto fail = [&](const std::string& what, std::size_t offset = 0) -> InputError {
        auto [line, col] = detail::locate(text, offset);
        return InputError(line, col, what);
    };
    if (!j.is_object()) throw fail("matrix document must be an object");
    const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "float";
    if (kind != "exact" && kind != "float") throw fail("kind must be \"exact\" or \"float\"", text.find("\"kind\""));
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) throw fail("rows must be a non-empty array");
    const auto& rows = j["rows"];
    std::vector<std::vector<Rational>> q;
    std::vector<std::vector<double>> f;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].empty()) throw fail("row must be a non-empty array", detail::entry_offset(text, r, {}));
        if (rows[r].size() != rows[0].size()) throw fail("ragged rows", detail::entry_offset(text, r, {}));
        q.emplace_back();
        f.emplace_back();
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const auto& e = rows[r][c];
            try {
                if (kind == "exact") {
                    if (e.is_string()) q.back().push_back(parse_rational(e.get<std::string>()));
                    else if (e.is_number_integer()) q.back().push_back(Rational(e.dump()));
                    else throw std::invalid_argument("exact entries must be \"p/q\" strings or integers");
                } else {
                    if (e.is_number()) f.back().push_back(e.get<double>());
                    else if (e.is_string()) f.back().push_back(parse_rational(e.get<std::string>()).get_d());
                    else throw std::invalid_argument("float entries must be numbers");
                }
            } catch (const std::exception& ex) {
                throw fail(ex.what(), detail::entry_offset(text, r, c));
            }
        }
    }
    if (kind == "exact") return Matrix<Rational>::from_rows(q);
    return Matrix<double>::from_rows(f);
}

inline RationalMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
                row.push_back(v);
            } catch (const std::exception&) {
                throw InputError(lineno, start + 1, "not a number: '" + cell + "'");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows[0].size()) throw InputError(lineno, 1, "ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(1, 1, "empty matrix");
    return Matrix<double>::from_rows(rows);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// `source` is a path, or inline JSON when it starts with '{'.
inline RationalMatrix load_matrix(const std::string& source) {
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') return matrix_from_json(parse_json(source), source);
    const std::string text = read_text(source);
    if (source.size() >= 4 && source.compare(source.size() - 4, 4, ".csv") == 0) return matrix_from_csv(text);
    return matrix_from_json(parse_json(text), text);
}

inline json scalar_json(const Scalar& s) {
    if (s.is_exact()) return to_string(s.exact());
    return s.as_double();
}

inline json matrix_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m.at(i, j)));
        rows.push_back(row);
    }
    return {{"kind", kind_name(m.kind())}, {"rows", rows}};
}

// Index lists in documents are 1-based.
inline json index_json(const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (auto i : idx) out.push_back(i + 1);
    return out;
}

inline json verdict_json(const Verdict& v) {
    json out;
    out["status"] = v.status_name();
    out["order"] = v.order;
    out["strict"] = v.strict;
    if (v.witness) {
        out["witness"] = {{"rows", index_json(v.witness->rows)}, {"cols", index_json(v.witness->cols)}, {"value", scalar_json(*v.value)}};
    } else {
        out["witness"] = nullptr;
    }
    out["tol"] = v.gate == "exact" ? json(nullptr) : json(v.tol);
    out["gate"] = v.gate;
    out["ambiguous"] = v.ambiguous;
    return out;
}

}  // namespace totpos
