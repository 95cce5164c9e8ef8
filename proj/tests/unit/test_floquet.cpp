#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support/checks.hpp"
#include "support/systems.hpp"

using namespace tsfloquet;
using namespace testing_support;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode failure_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::CheckFailed;
}

}  // namespace

TEST_CASE("phase table of the worked examples") {
    const SystemSpec s1 = integers_period2();
    const PhaseTable t1 = solve_phi(s1);
    CHECK(t1.phi(0) == 1.0);
    CHECK(t1.phi(1) == -7.0 / 8.0);
    CHECK(t1.phi(2) == -8.0 / 7.0);
    CHECK(t1.phi_delta(0) == -15.0 / 8.0);
    CHECK(h_fn(s1, t1, 0) == 2.0);
    CHECK_THAT(h_fn(s1, t1, 1), WithinAbs(83.0 / 49.0, 1e-15));

    const SystemSpec s3 = gapped_line();
    const PhaseTable t3 = solve_phi(s3);
    for (const double t : {0.0, 1.0, kPi, 2 * kPi}) CHECK_THAT(t3.phi(t), WithinAbs(1.0, 1e-15));
    CHECK(t3.phi_delta(1.0) == 0.0);
    CHECK_THAT(h_fn(s3, t3, kPi), WithinAbs(-0.25, 1e-15));
    CHECK(h_fn(s3, t3, 2.0) == 0.0);
    CHECK(t3.warnings().empty());

    const SystemSpec quarter = system_of({0, 1, {Interval{0, 1}}}, "0", "1/4");
    CHECK(solve_phi(quarter).phi(0.3) == 0.5);

    const SystemSpec m = mathieu(3.979, 1.0);
    CHECK(solve_phi(m).phi_delta(0.0) == 0.0);
}

TEST_CASE("simplified kernels") {
    const SystemSpec s1 = integers_period2();
    const PhaseTable t1 = solve_phi(s1);
    CHECK_THAT(kernel_P(s1, t1, 2, 0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(kernel_Q(s1, t1, 2, 0), WithinAbs(64.0 / 49.0, 1e-15));
    CHECK_THAT(kernel_P(s1, t1, 2, 1), WithinAbs(0.0, 1e-15));
    CHECK_THAT(kernel_Q(s1, t1, 2, 1), WithinAbs(1.0, 1e-15));

    const SystemSpec s3 = gapped_line();
    const PhaseTable t3 = solve_phi(s3);
    CHECK_THAT(kernel_P(s3, t3, 2 * kPi, kPi), WithinAbs(0.0, 1e-15));
    CHECK_THAT(kernel_Q(s3, t3, 2 * kPi, kPi), WithinAbs(1.0, 1e-15));
    CHECK_THAT(table_cos(s3, t3, kPi, 0), WithinAbs(-1.0, 1e-12));
}

TEST_CASE("series terms of the worked examples") {
    const SystemSpec s1 = integers_period2();
    const PhaseTable t1 = solve_phi(s1);
    const auto terms1 = a_terms(s1, t1, 4);
    CHECK_THAT(terms1[0], WithinAbs(-15.0 / 56.0, 1e-15));
    CHECK_THAT(terms1[1], WithinAbs(128.0 / 49.0 - 7.0 / 8.0 * 83.0 / 49.0, 1e-14));
    CHECK_THAT(terms1[2], WithinAbs(166.0 / 49.0, 1e-14));
    CHECK(terms1[3] == 0.0);
    CHECK(terms1[4] == 0.0);
    CHECK_THAT(a_partial(s1, t1, 2), WithinAbs(4.25, 1e-14));

    const SystemSpec s3 = gapped_line();
    const PhaseTable t3 = solve_phi(s3);
    CHECK_THAT(a_term(s3, t3, 0), WithinAbs(-2.0, 1e-12));
    CHECK_THAT(a_term(s3, t3, 1), WithinAbs(kPi / 4, 1e-12));
    CHECK_THAT(a_partial(s3, t3, 1), WithinAbs(kPi / 4 - 2, 1e-10));

    const SystemSpec s4 = sine_damped_line();
    CHECK_THAT(a_partial(s4, solve_phi(s4), 3), WithinAbs(-0.065450, 1e-6));
}

TEST_CASE("tuple enumeration agrees with the recursion on discrete scales") {
    std::mt19937_64 rng(3);
    int systems = 0;
    while (systems < 30) {
        const auto spec = random_discrete(rng, 1 + systems % 6);
        if (!spec) continue;
        ++systems;
        const PhaseTable table = solve_phi(*spec);
        const std::size_t k = spec->ts.scattered_count();
        const auto terms = a_terms(*spec, table, k + 1);
        double scale = 1.0;
        for (const double a : terms) scale = std::max(scale, std::abs(a));
        for (std::size_t n = 0; n <= k + 1; ++n) {
            INFO("n = " << n << ", k = " << k);
            CHECK(std::abs(a_term_by_enumeration(*spec, table, n) - terms[n]) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("discrete exactness and gauge invariance") {
    std::mt19937_64 rng(9);
    int systems = 0;
    while (systems < 50) {
        const auto spec = random_discrete(rng, 1 + systems % 6);
        if (!spec) continue;
        ++systems;
        const std::size_t k = spec->ts.scattered_count();
        const PhaseTable table = solve_phi(*spec);
        const auto terms = a_terms(*spec, table, k + 2);
        double scale = 1.0;
        for (const double a : terms) scale = std::max(scale, std::abs(a));
        for (std::size_t n = k + 1; n <= k + 2; ++n) CHECK(std::abs(terms[n]) <= 1e-12 * scale);
        const double trace = monodromy(*spec).trace();
        const double a_k = a_partial(*spec, table, k);
        CHECK(std::abs(a_k - trace) <= 1e-10 * std::max(1.0, std::abs(trace)));
        for (const double seed : {-3.0, 0.25, 7.5}) {
            // other gauges can produce large cancelling terms; round-off scales with the largest
            const auto gauged_terms = a_terms(*spec, solve_phi(*spec, seed), k);
            double gauged = 0.0;
            double largest = scale;
            for (const double a : gauged_terms) {
                gauged += a;
                largest = std::max(largest, std::abs(a));
            }
            CHECK(std::abs(gauged - a_k) <= 1e-13 * largest + 1e-10 * std::max(1.0, std::abs(a_k)));
        }
        CHECK(error_bound(*spec, table, k).exact);
    }
}

TEST_CASE("phase table invariants on random systems") {
    std::mt19937_64 rng(21);
    int systems = 0;
    Residual r;
    while (systems < 200) {
        auto spec = systems % 2 == 0 ? random_hybrid(rng) : random_discrete(rng, 1 + systems % 6);
        if (!spec) continue;
        ++systems;
        r.merge(phi_equations(*spec, solve_phi(*spec)));
    }
    CHECK(r.worst <= 1e-12);
}

TEST_CASE("fundamental matrix and its explicit inverse") {
    std::mt19937_64 rng(31);
    int systems = 0;
    Residual fund, inv;
    while (systems < 20) {
        auto spec = systems % 2 == 0 ? random_hybrid(rng) : random_discrete(rng, 1 + systems % 6);
        if (!spec) continue;
        ++systems;
        spec->quad_tol = 1e-13;
        const PhaseTable table = solve_phi(*spec);
        fund.merge(fundamental_matrix(*spec, table));
        inv.merge(inverse_identity(*spec, table, rng));
    }
    CHECK(fund.worst <= 1e-8);
    CHECK(inv.worst <= 1e-10);
}

TEST_CASE("bound constants and truncation bound") {
    const SystemSpec s4 = sine_damped_line();
    const PhaseTable t4 = solve_phi(s4);
    const BoundConstants k = estimate_bounds(s4, t4);
    CHECK_THAT(k.k1, WithinAbs(1.0, 1e-12));
    CHECK_THAT(k.k2, WithinAbs(1.0, 1e-12));
    CHECK_THAT(k.k3, WithinAbs(0.5, 1e-12));
    const ErrorBound e = error_bound(s4, k, 3);
    CHECK_FALSE(e.exact);
    CHECK_THAT(e.value, WithinAbs(0.360016406528039, 1e-9));
    double previous = e.value;
    for (std::size_t n = 4; n < 30; ++n) {
        const double next = error_bound(s4, k, n).value;
        CHECK(next < previous);
        previous = next;
    }
    CHECK(previous < 1e-20);

    const SystemSpec s3 = gapped_line();
    CHECK(estimate_bounds(s3, solve_phi(s3)).k3 >= 0.25);
    CHECK(error_bound(integers_period2(), solve_phi(integers_period2()), 2).exact);
    CHECK_FALSE(error_bound(integers_period2(), solve_phi(integers_period2()), 1).exact);

    // h = 0 everywhere: p = -phi^Δ/phi with phi = sqrt(q)
    const SystemSpec flat = system_of({0, 1, {Interval{0, 1}}}, "-cos(t)/(2*(2 + sin(t)))", "2 + sin(t)");
    const PhaseTable tf = solve_phi(flat);
    CHECK(estimate_bounds(flat, tf).k3 <= 1e-15);
    const auto terms = a_terms(flat, tf, 3);
    for (std::size_t n = 1; n < terms.size(); ++n) CHECK(std::abs(terms[n]) <= 1e-15);
}

TEST_CASE("series terms stay within the per-term bound") {
    std::mt19937_64 rng(41);
    int systems = 0;
    while (systems < 15) {
        const auto spec = random_hybrid(rng);
        if (!spec) continue;
        ++systems;
        const PhaseTable table = solve_phi(*spec);
        const BoundConstants k = estimate_bounds(*spec, table);
        const auto terms = a_terms(*spec, table, 6);
        const double x = k.k2 * k.k3 * spec->ts.period();
        double per_term = k.k1 / k.k2;
        for (std::size_t n = 1; n < terms.size(); ++n) {
            per_term *= x / static_cast<double>(n);
            CHECK(std::abs(terms[n]) <= per_term * (1 + 1e-9) + 1e-12);
        }
        const double trace = monodromy(*spec).trace();
        CHECK(std::abs(trace - a_partial(*spec, table, 6)) <= error_bound(*spec, k, 6).value + 1e-8);
    }
}

TEST_CASE("continuous form with B = 1") {
    const SystemSpec s4 = sine_damped_line();
    const PhaseTable t4 = solve_phi(s4);
    CHECK_THAT(shi_continuous_a(s4, t4, 1), WithinAbs(a_partial(s4, t4, 3), 1e-9));
    CHECK_THAT(shi_continuous_a(s4, t4, 0), WithinAbs(2 * std::cos(kPi / 2), 1e-12));
    const SystemSpec m = mathieu(3.979, 1.0);
    CHECK_THAT(shi_continuous_a(m, solve_phi(m), 1), WithinAbs(2.000049, 5e-6));

    const SystemSpec s3 = gapped_line();
    CHECK(failure_of([&] { (void)shi_continuous_a(s3, solve_phi(s3), 1); }) == ErrorCode::NotContinuousScale);
    const SystemSpec damped = system_of({0, kPi, {Interval{0, kPi}}}, "0.1", "1");
    CHECK(failure_of([&] { (void)shi_continuous_a(damped, solve_phi(damped), 1); }) == ErrorCode::BNotOne);
}

TEST_CASE("depth budget and system validation") {
    const SystemSpec s4 = sine_damped_line();
    const PhaseTable t4 = solve_phi(s4);
    CHECK(failure_of([&] { (void)a_terms(s4, t4, 9); }) == ErrorCode::DepthBudgetExceeded);
    CHECK_NOTHROW(a_terms(integers_period2(), solve_phi(integers_period2()), 12));

    const auto z = [] { return TimeScale::validate({0, 2, {Point{0}, Point{1}, Point{2}}}); };
    CHECK(failure_of([&] { (void)make_system(z(), parse_expression("0"), parse_expression("0")); }) ==
          ErrorCode::InvalidSystem);
    // 1 - mu p + mu^2 q = 1 - 2 + 1 = 0
    CHECK(failure_of([&] { (void)make_system(z(), parse_expression("2"), parse_expression("1")); }) ==
          ErrorCode::NotRegressive);
    const auto line = TimeScale::validate({0, 1, {Interval{0, 1}}});
    CHECK(failure_of([&] { (void)make_system(line, parse_expression("0"), parse_expression("t - 0.5")); }) ==
          ErrorCode::NegativeQOnDense);
}

TEST_CASE("junction mismatch is reported") {
    std::mt19937_64 rng(51);
    int warned = 0;
    for (int i = 0; i < 10; ++i) {
        const auto spec = random_hybrid_unmatched(rng);
        if (!spec) continue;
        const FloquetReport r = analyze(*spec);
        if (!r.warnings.empty()) {
            ++warned;
            CHECK_THAT(r.verdict.justification, Catch::Matchers::ContainsSubstring("junction"));
        }
    }
    CHECK(warned > 0);
    std::mt19937_64 rng2(52);
    for (int i = 0; i < 10; ++i) {
        const auto spec = random_hybrid(rng2);
        if (spec) CHECK(solve_phi(*spec).warnings().empty());
    }
}

TEST_CASE("multiplier moduli") {
    auto m = multipliers({4.25, 4.25}, 1.0);
    CHECK_THAT(m[0].lo, WithinAbs(0.25, 1e-15));
    CHECK_THAT(m[1].lo, WithinAbs(4.0, 1e-15));
    m = multipliers({-1.2147, -1.2145}, 10.084206);
    CHECK_THAT(m[0].lo, WithinAbs(3.175564, 1e-6));
    CHECK_THAT(m[0].hi, WithinAbs(3.175564, 1e-6));
    CHECK_THAT(m[1].hi, WithinAbs(3.175564, 1e-6));
    m = multipliers({0, 0}, 1.0);
    CHECK(m[0].lo == 1.0);
    CHECK(m[1].hi == 1.0);
    // interval straddling the real/complex boundary
    m = multipliers({1.5, 2.5}, 1.0);
    CHECK(m[1].lo == 1.0);
    CHECK_THAT(m[1].hi, WithinAbs(2.0, 1e-15));
    CHECK_THAT(m[0].lo, WithinAbs(0.5, 1e-15));
    // negative B: real roots of opposite sign
    m = multipliers({0, 0}, -4.0);
    CHECK(m[0].lo == 2.0);
    CHECK(m[1].lo == 2.0);
}

TEST_CASE("verdicts") {
    CHECK(verdict({4.25, 4.25}, 1.0).kind == Stability::Unstable);
    CHECK(verdict({-0.752, -0.752}, 1.0 + 1e-16).kind == Stability::Stable);
    CHECK(verdict({-0.065450 - 0.360016, -0.065450 + 0.360016}, 1.0).kind == Stability::Stable);
    CHECK(verdict({-1.2147, -1.2145}, 10.084206).kind == Stability::Unstable);
    CHECK(verdict({0.1, 0.2}, 0.25).kind == Stability::ExponentiallyStable);
    const Verdict u = verdict({1.9, 2.1}, 1.0);
    CHECK(u.kind == Stability::Undetermined);
    CHECK_THAT(u.justification, Catch::Matchers::ContainsSubstring("increase n"));
    CHECK(verdict({0.0, 0.1}, 1.5).kind == Stability::Unstable);
    CHECK(verdict({-3.0, 3.0}, 0.5).kind == Stability::Undetermined);
    CHECK(to_string(Stability::ExponentiallyStable) == "exponentially stable");
}

TEST_CASE("analysis pipeline") {
    AnalysisOptions o;
    o.n = 2;
    const FloquetReport r1 = analyze(integers_period2(), o);
    CHECK(r1.a_terms.size() == 3);
    CHECK(r1.error.exact);
    CHECK(r1.verdict.kind == Stability::Unstable);

    o.n = 3;
    const FloquetReport r4 = analyze(sine_damped_line(), o);
    CHECK(r4.verdict.kind == Stability::Stable);
    CHECK_THAT(r4.moduli[0].lo, WithinAbs(1.0, 1e-9));

    o.shi = true;
    o.n = 2;
    const FloquetReport shi = analyze(sine_damped_line(), o);
    CHECK_THAT(shi.a_partial, WithinAbs(r4.a_partial, 1e-9));
    CHECK_THAT(shi.error.value, WithinAbs(error_bound(sine_damped_line(), r4.constants, 3).value, 1e-15));
}
