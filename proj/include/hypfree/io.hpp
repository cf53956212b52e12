#pragma once

// Arrangement text files.
//
//   # comment
//   field Q            (or: field Qsqrt 5)
//   rank 3             (or: affine 2, then each line has 2 coefficients and a constant)
//   1 0 0
//   1/2 -1 1+r
//
// Affine lines c . x + k = 0 are coned on reading; the result has rank L+1.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arrangement.hpp"

namespace hypfree {

class ParseError : public std::invalid_argument {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

inline int parse_int_token(const std::string& tok, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size() || v < -(1L << 30) || v > (1L << 30))
            throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected an integer ") + what + ", got '" + tok + "'");
    }
}

} // namespace detail

/// "Q" or "Qsqrt d".
inline std::string field_name(std::int64_t radicand) {
    return radicand == 0 ? "Q" : "Qsqrt " + std::to_string(radicand);
}

/// Accepts "Q", "Qsqrt 5" and "Qsqrt5".
inline std::int64_t parse_field(std::string_view text) {
    auto toks = detail::split_ws(text);
    std::string joined;
    for (auto& t : toks)
        joined += t;
    if (joined == "Q")
        return 0;
    if (joined.starts_with("Qsqrt")) {
        std::string rest = joined.substr(5);
        std::int64_t d = 0;
        try {
            std::size_t used = 0;
            d = std::stoll(rest, &used);
            if (used != rest.size())
                throw std::invalid_argument(rest);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad field '" + std::string(text) + "'");
        }
        if (!is_squarefree_radicand(d))
            throw std::invalid_argument("field radicand must be a square-free integer > 1, got " + std::to_string(d));
        return d;
    }
    throw std::invalid_argument("unknown field '" + std::string(text) + "' (want Q or Qsqrt d)");
}

struct ArrangementFile {
    Arrangement arrangement;
    /// The hyperplanes in the order the file lists them (for an affine file,
    /// the coned lines followed by z = 0).
    std::vector<Hyperplane> file_order;
};

/// `default_radicand` applies when the file has no field line; a field line
/// always wins.
inline ArrangementFile read_arrangement(std::string_view text, std::int64_t default_radicand = 0) {
    std::optional<std::int64_t> radicand;
    std::optional<int> rank;
    bool affine = false;
    std::vector<std::vector<Scalar>> forms;
    std::vector<std::size_t> form_lines;
    AffineArrangement aff;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto toks = detail::split_ws(raw);
        if (toks.empty()) {
            if (end == text.size())
                break;
            continue;
        }

        if (toks[0] == "field") {
            if (radicand || rank)
                throw ParseError(lineno, "'field' must come before the rank line and appear once");
            if (toks.size() < 2)
                throw ParseError(lineno, "missing field name");
            try {
                radicand = parse_field(raw.substr(raw.find("field") + 5));
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
            continue;
        }
        if (toks[0] == "rank" || toks[0] == "affine") {
            if (rank)
                throw ParseError(lineno, "repeated '" + toks[0] + "' line");
            if (toks.size() != 2)
                throw ParseError(lineno, "expected '" + toks[0] + " L'");
            rank = detail::parse_int_token(toks[1], lineno, "dimension");
            if (*rank < 1 || *rank > 62)
                throw ParseError(lineno, "dimension must be between 1 and 62");
            affine = toks[0] == "affine";
            if (!radicand)
                radicand = default_radicand;
            continue;
        }
        if (!rank)
            throw ParseError(lineno, "hyperplane before the 'rank' line");

        const std::size_t want = static_cast<std::size_t>(*rank) + (affine ? 1 : 0);
        if (toks.size() != want)
            throw ParseError(lineno, "expected " + std::to_string(want) + " coefficients, got " +
                                         std::to_string(toks.size()));
        std::vector<Scalar> row;
        for (const auto& t : toks) {
            try {
                row.push_back(Scalar::parse(t, *radicand));
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
        }
        if (affine) {
            Scalar k = row.back();
            row.pop_back();
            try {
                aff.lines.emplace_back(std::move(row), std::move(k));
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
        } else {
            forms.push_back(std::move(row));
        }
        form_lines.push_back(lineno);
    }
    if (!rank)
        throw ParseError(lineno, "missing 'rank L' line");

    ArrangementFile out;
    if (affine) {
        for (std::size_t i = 0; i < aff.lines.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (aff.lines[i] == aff.lines[j])
                    throw ParseError(form_lines[i], "line repeats line " + std::to_string(form_lines[j]));
        aff.dim = *rank;
        aff.radicand = *radicand;
        for (const auto& line : aff.lines) {
            auto f = line.coeffs;
            f.push_back(line.constant);
            out.file_order.emplace_back(std::move(f));
        }
        std::vector<Scalar> z(static_cast<std::size_t>(*rank) + 1);
        z.back() = Scalar(1);
        out.file_order.emplace_back(std::move(z));
        aff.canonicalize();
        out.arrangement = cone(aff);
        return out;
    }
    Arrangement a(*rank, *radicand);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        try {
            Hyperplane h(forms[i]);
            if (a.contains(h))
                throw std::invalid_argument("hyperplane repeats an earlier one (up to scaling)");
            a = a.with(h);
            out.file_order.push_back(std::move(h));
        } catch (const std::exception& e) {
            throw ParseError(form_lines[i], e.what());
        }
    }
    out.arrangement = std::move(a);
    return out;
}

inline Arrangement parse_arrangement(std::string_view text, std::int64_t default_radicand = 0) {
    return read_arrangement(text, default_radicand).arrangement;
}

inline std::string write_arrangement(const Arrangement& a, std::string_view comment = {}) {
    std::string out;
    if (!comment.empty())
        out += "# " + std::string(comment) + "\n";
    out += "field " + field_name(a.radicand()) + "\n";
    out += "rank " + std::to_string(a.rank()) + "\n";
    for (const auto& h : a) {
        const auto& f = h.form();
        for (std::size_t i = 0; i < f.size(); ++i)
            out += (i ? " " : "") + f[i].to_string();
        out += "\n";
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace hypfree
