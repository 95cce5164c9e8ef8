#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "report.hpp"
#include "run.hpp"

using namespace analyze;
using tsfloquet::Error;
using tsfloquet::ErrorCode;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const std::filesystem::path kConfigs = TSFLOQUET_CONFIG_DIR;
const std::filesystem::path kGolden = TSFLOQUET_GOLDEN_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string diag;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "analyze");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, diag;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, diag);
    return {code, out.str(), diag.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ErrorCode parse_failure(std::string_view text) {
    try {
        (void)build_system(parse_config(text));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::CheckFailed;
}

}  // namespace

TEST_CASE("config parsing") {
    const ConfigFile c = parse_config(R"(
# comment line
t0 = 0
period = 2
points = [0, 1, 2]   # trailing comment
intervals = [[3; 4], [5, 6]]
p = "cos(t) # not a comment"
q = "1/4"
n = 4
tol = 1e-8
oracle = true
)");
    CHECK(c.t0 == 0.0);
    CHECK(c.period == 2.0);
    CHECK(c.points == std::vector<double>{0, 1, 2});
    REQUIRE(c.intervals.size() == 2);
    CHECK(c.intervals[1] == std::pair<double, double>{5, 6});
    CHECK(c.p == "cos(t) # not a comment");
    CHECK(c.n == 4u);
    CHECK(c.tol == 1e-8);
    CHECK(c.oracle);
    CHECK_FALSE(c.shi);

    const ConfigFile pi = parse_config("intervals = [[0, pi]]\nq = \"1\"\n");
    CHECK_THAT(pi.intervals[0].second, WithinAbs(3.141592653589793, 1e-15));
    const auto ts = build_time_scale(pi);
    CHECK(ts.t0() == 0.0);
    CHECK_THAT(ts.period(), WithinAbs(3.141592653589793, 1e-15));
    CHECK(default_n(ts) == 3);
    CHECK(default_n(build_time_scale(parse_config("points = [0, 1, 2, 3]\nq = \"1\"\n"))) == 3);
    CHECK(default_n(build_time_scale(parse_config("points = [0, 0.5, 2]\nq = \"1\"\n"))) == 2);
}

TEST_CASE("config errors carry the line number") {
    try {
        (void)parse_config("q = \"1\"\n\nbogus = 3\n", "sys.cfg");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK_THAT(std::string(e.what()), ContainsSubstring("sys.cfg:3"));
    }
    CHECK(parse_failure("points = [0, 1\n") == ErrorCode::ParseError);
    CHECK(parse_failure("n = -1\n") == ErrorCode::ParseError);
    CHECK(parse_failure("points = [0, 1, 2]\n") == ErrorCode::ValidationError);
    CHECK(parse_failure("points = [0, 1, 2]\nq = \"1 +\"\n") == ErrorCode::SyntaxError);
    CHECK(parse_failure("intervals = [[1, 0]]\nq = \"1\"\n") == ErrorCode::DegenerateInterval);
}

TEST_CASE("golden transcripts") {
    for (const std::string stem : {"integers_period2", "even_integers_period6", "gapped_line", "sine_damped_line"}) {
        INFO(stem);
        const Outcome o = invoke({(kConfigs / (stem + ".cfg")).string()});
        CHECK(o.out == slurp(kGolden / (stem + ".txt")));
    }
}

TEST_CASE("exit codes follow the verdict") {
    CHECK(invoke({(kConfigs / "integers_period2.cfg").string()}).code == kExitUnstable);
    CHECK(invoke({(kConfigs / "even_integers_period6.cfg").string()}).code == kExitStable);
    CHECK(invoke({(kConfigs / "sine_damped_line.cfg").string()}).code == kExitStable);
    // one term of the last example is too coarse to decide
    CHECK(invoke({(kConfigs / "sine_damped_line.cfg").string(), "--n", "0"}).code == kExitUndetermined);
    CHECK(invoke({"/nonexistent/file.cfg"}).code == kExitBadInput);
    CHECK(invoke({}).code == kExitBadInput);
    CHECK(invoke({(kConfigs / "sine_damped_line.cfg").string(), "--n", "12"}).code == kExitNumerical);
    CHECK(invoke({(kConfigs / "integers_period2.cfg").string(), "--shi"}).code == kExitBadInput);
    CHECK(exit_code(ErrorCode::CheckFailed) == kExitCheckFailed);
    CHECK(exit_code(ErrorCode::NegativeQOnDense) == kExitBadInput);
    CHECK(exit_code(ErrorCode::QuadratureNonConvergence) == kExitNumerical);
}

TEST_CASE("oracle and shi flags") {
    const Outcome o = invoke({(kConfigs / "even_integers_period6.cfg").string(), "--oracle"});
    CHECK(o.code == kExitStable);
    CHECK_THAT(o.out, ContainsSubstring("oracle"));

    ConfigFile c = load_config(kConfigs / "sine_damped_line.cfg");
    Flags f;
    f.shi = true;
    f.n = 2;
    const Report shi = run(c, f);
    CHECK(shi.shi);
    CHECK_THAT(shi.a_partial, WithinAbs(-0.065450, 1e-6));
}

TEST_CASE("json output round-trips") {
    const Outcome o = invoke({(kConfigs / "gapped_line.cfg").string(), "--json"});
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j.at("verdict") == "unstable");
    Report r = from_json(j);
    CHECK(to_json(r).dump() == nlohmann::ordered_json::parse(o.out).dump());

    const Report direct = run(load_config(kConfigs / "integers_period2.cfg"), {});
    Report back = from_json(nlohmann::json::parse(to_json(direct).dump()));
    back.seconds = direct.seconds;
    CHECK(back == direct);
}

TEST_CASE("batch mode") {
    const Outcome text = invoke({"--batch", kConfigs.string()});
    CHECK(text.code == kExitUnstable);
    const auto first = text.out.find("integers_period2.cfg ==");
    const auto last = text.out.find("sine_damped_line.cfg ==");
    CHECK(first != std::string::npos);
    CHECK(last != std::string::npos);
    CHECK(first < last);

    const Outcome json = invoke({"--batch", (kConfigs / "mathieu").string(), "--json"});
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.size() == 12);
}
