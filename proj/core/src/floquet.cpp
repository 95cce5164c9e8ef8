#include "tsfloquet/floquet.hpp"

#include <numeric>

namespace tsfloquet {

FloquetReport analyze(const SystemSpec& spec, const AnalysisOptions& options) {
    const PhaseTable table = solve_phi(spec);
    FloquetReport r;
    r.n = options.n;
    r.shi = options.shi;
    r.warnings = table.warnings();
    r.b = compute_B(spec);

    const bool exact = spec.ts.is_discrete() && options.n >= spec.ts.scattered_count();
    if (!exact) r.constants = estimate_bounds(spec, table, options.bounds);

    if (options.shi) {
        const std::size_t m = options.n / 2;
        r.a_partial = shi_continuous_a(spec, table, m, options.series);
        r.error = error_bound(spec, r.constants, 2 * m + 1);
    } else {
        r.a_terms = a_terms(spec, table, options.n, options.series);
        r.a_partial = std::accumulate(r.a_terms.begin(), r.a_terms.end(), 0.0);
        r.error = exact ? ErrorBound{0.0, true} : error_bound(spec, r.constants, options.n);
    }

    const RealInterval a = RealInterval::around(r.a_partial, r.error.value);
    r.moduli = multipliers(a, r.b);
    r.verdict = verdict(a, r.b);
    if (!r.warnings.empty()) {
        r.verdict.justification += "; phi jumps at a dense/scattered junction, so the series need not sum to A";
    }
    return r;
}

}  // namespace tsfloquet
