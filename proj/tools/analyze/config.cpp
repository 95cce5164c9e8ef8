#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsfloquet/error.hpp"
#include "tsfloquet/expr.hpp"

namespace analyze {

using tsfloquet::Error;
using tsfloquet::ErrorCode;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& message) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + message);
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return std::string(s);
}

/// Strips a `#` comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote != 0) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

/// Splits on `sep` at bracket/parenthesis depth zero.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    if (out.size() == 1 && out.front().empty()) out.clear();
    return out;
}

std::string_view unbracket(std::string_view s, const std::string& source, std::size_t line) {
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail(source, line, "expected a [...] list");
    return trim(s.substr(1, s.size() - 2));
}

double constant(std::string_view text, const std::string& source, std::size_t line) {
    try {
        const tsfloquet::Expression e = tsfloquet::parse_expression(unquote(trim(text)));
        if (!e.is_constant()) fail(source, line, "'" + std::string(text) + "' is not a constant");
        return e(0.0);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::ParseError) throw;
        fail(source, line, err.what());
    }
}

bool boolean(std::string_view text, const std::string& source, std::size_t line) {
    const std::string v = unquote(trim(text));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(source, line, "expected true or false, got '" + v + "'");
}

std::size_t count(std::string_view text, const std::string& source, std::size_t line) {
    const double v = constant(text, source, line);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e6) fail(source, line, "n must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

}  // namespace

ConfigFile parse_config(std::string_view text, std::string source) {
    ConfigFile cfg;
    cfg.source = source;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(source, line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) fail(source, line_no, "missing value for '" + key + "'");

        if (key == "t0") {
            cfg.t0 = constant(value, source, line_no);
        } else if (key == "period") {
            cfg.period = constant(value, source, line_no);
        } else if (key == "points") {
            cfg.points.clear();
            for (const auto item : split_top(unbracket(value, source, line_no), ',')) {
                cfg.points.push_back(constant(item, source, line_no));
            }
        } else if (key == "intervals") {
            cfg.intervals.clear();
            for (const auto item : split_top(unbracket(value, source, line_no), ',')) {
                const std::string_view inner = unbracket(item, source, line_no);
                auto ends = split_top(inner, ',');
                if (ends.size() == 1) ends = split_top(inner, ';');
                if (ends.size() != 2) fail(source, line_no, "an interval needs exactly two endpoints");
                cfg.intervals.emplace_back(constant(ends[0], source, line_no), constant(ends[1], source, line_no));
            }
        } else if (key == "p") {
            cfg.p = unquote(value);
        } else if (key == "q") {
            cfg.q = unquote(value);
        } else if (key == "qprime") {
            cfg.qprime = unquote(value);
        } else if (key == "n") {
            cfg.n = count(value, source, line_no);
        } else if (key == "tol") {
            const double tol = constant(value, source, line_no);
            if (!(tol > 0.0)) fail(source, line_no, "tol must be positive");
            cfg.tol = tol;
        } else if (key == "oracle") {
            cfg.oracle = boolean(value, source, line_no);
        } else if (key == "shi") {
            cfg.shi = boolean(value, source, line_no);
        } else if (key == "json") {
            cfg.json = boolean(value, source, line_no);
        } else {
            fail(source, line_no, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

tsfloquet::TimeScale build_time_scale(const ConfigFile& config) {
    std::vector<double> coords = config.points;
    tsfloquet::PeriodicTimeScale pts;
    for (const double x : config.points) pts.segments.emplace_back(tsfloquet::Point{x});
    for (const auto& [a, b] : config.intervals) {
        pts.segments.emplace_back(tsfloquet::Interval{a, b});
        coords.push_back(a);
        coords.push_back(b);
    }
    if (coords.empty()) throw Error(ErrorCode::ValidationError, "the time scale has no points or intervals");
    const auto [lo, hi] = std::minmax_element(coords.begin(), coords.end());
    pts.t0 = config.t0.value_or(*lo);
    pts.period = config.period.value_or(*hi - pts.t0);
    return tsfloquet::TimeScale::validate(std::move(pts));
}

tsfloquet::SystemSpec build_system(const ConfigFile& config) {
    if (config.q.empty()) throw Error(ErrorCode::ValidationError, "q required");
    tsfloquet::TimeScale ts = build_time_scale(config);
    std::optional<tsfloquet::Expression> qprime;
    if (config.qprime) qprime = tsfloquet::parse_expression(*config.qprime);
    return tsfloquet::make_system(std::move(ts), tsfloquet::parse_expression(config.p),
                                  tsfloquet::parse_expression(config.q), qprime,
                                  config.tol.value_or(tsfloquet::kDefaultQuadTol));
}

std::size_t default_n(const tsfloquet::TimeScale& ts) { return ts.is_discrete() ? ts.scattered_count() : 3; }

}  // namespace analyze
