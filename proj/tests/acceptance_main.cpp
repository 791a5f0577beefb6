// Acceptance gate: runs every headline guarantee of the engine at full
// strength and prints one PASS/FAIL line per criterion.  Exits nonzero if any
// criterion fails.

#include <qtheta/registry.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace qtheta;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

// --- criterion 1: the exact suite at order 200 ------------------------------
void exact_suite() {
    auto t0 = std::chrono::steady_clock::now();
    bool all_ok = true;
    std::string first_bad;
    long long count = 0;
    for (const auto& rep : check_all(KindFilter::exact_only, 200, 30)) {
        ++count;
        if (rep.status != Status::pass || rep.window < 200) {
            all_ok = false;
            if (first_bad.empty()) first_bad = rep.id;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(all_ok, "all " + std::to_string(count) +
                       " exact identities have zero residual through q^200" +
                       (first_bad.empty() ? "" : " (first failure: " + first_bad + ")"));
    report(secs < 60.0, "exact suite at order 200 completes in under 60 s (took " +
                            std::to_string(secs) + " s)");
}

// --- criterion 2: divisor generating functions through n = 200 --------------
void divisor_suite() {
    const std::pair<long long, long long> params[] = {{1, 0}, {2, 0}, {2, 1}, {4, 2},
                                                      {3, 0}, {6, 3}, {18, 9}};
    bool ok = true;
    for (auto [a, b] : params) {
        CheckReport rep = divisor_generating_check(a, b, 200);
        if (rep.status != Status::pass || rep.window < 200) ok = false;
    }
    report(ok, "divisor generating functions match restricted divisor sums for n <= 200");
}

// --- criterion 3: numeric identities at stated precisions -------------------
const char* kQTrigIds[] = {"q_double_sq", "q_double2",         "q_double3",
                           "q_double4_sq", "q_double5",         "q_triple",
                           "q_triple2",    "q_add3_corrected",  "q_add3_specialized",
                           "parity_symmetry"};

void numeric_suite() {
    bool ok128 = true;
    double worst128 = -1e9;
    for (const char* id : kQTrigIds) {
        CheckReport rep = check_numeric(id, 128L);
        worst128 = std::max(worst128, rep.log10_residual);
        if (rep.status != Status::pass || rep.log10_residual >= -100.0) ok128 = false;
    }
    report(ok128, "q-trigonometric identities at 128 digits have residuals below 1e-100 "
                  "(worst 1e" + std::to_string(worst128) + ")");

    bool okd = true;
    double worstd = -1e9;
    for (const char* id : {"deriv_sin1", "deriv_sin3", "deriv_cos2", "deriv_cos4"}) {
        CheckReport rep = check_numeric(id, 128L);
        worstd = std::max(worstd, rep.log10_residual);
        if (rep.status != Status::pass || rep.log10_residual >= -40.0) okd = false;
    }
    report(okd, "derivative identities at 128 digits have residuals below 1e-40 "
                "(worst 1e" + std::to_string(worstd) + ")");

    bool ok256 = true;
    double worst256 = -1e9;
    for (const char* id : kQTrigIds) {
        CheckReport rep = check_numeric(id, 256L);
        worst256 = std::max(worst256, rep.log10_residual);
        if (rep.status != Status::pass || rep.log10_residual >= -220.0) ok256 = false;
    }
    report(ok256, "q-trigonometric identities at 256 digits have residuals below 1e-220 "
                  "(worst 1e" + std::to_string(worst256) + ")");
}

// --- criterion 4: the printed degenerate addition formula really fails ------
void printed_formula() {
    const IdentityRecord& rec = find_identity("q_add3_printed");
    NumericOutcome out = rec.numeric_fn(default_samples(128));
    bool ok = out.status == Status::fail && out.min_log10_residual > -3.0;
    report(ok, "printed addition formula leaves |lhs| > 1e-3 on every sample "
               "(smallest 1e" + std::to_string(out.min_log10_residual) + ")");
}

// --- criterion 5: the pi limit ----------------------------------------------
void pi_limit() {
    NumericOutcome out = pi_limit_outcome(128);
    report(out.status == Status::pass && out.log10_residual < -2.0,
           "(1-q^2) Pi_q approaches pi monotonically with error below 1e-2 at q = 0.999");
}

// --- criterion 6: mutation sensitivity --------------------------------------
void mutation() {
    bool ok = true;
    auto baseline = gosper_a_lhs_specs();
    for (size_t i = 0; i < baseline.size(); ++i) {
        for (size_t j = 0; j < baseline[i].numerators.size(); ++j) {
            auto specs = gosper_a_lhs_specs();
            specs[i].numerators[j].coef = -specs[i].numerators[j].coef;
            SeriesComparison cmp = compare_series(lambert_sum(specs, 24), gosper_a_rhs(24));
            if (!cmp.failure || cmp.failure->exponent > 16) ok = false;
        }
    }
    report(ok, "flipping the sign of any single Lambert numerator is caught at or below q^4");
}

// --- criterion 7: randomized algebraic invariants ----------------------------
PrefSeries random_series(std::mt19937& rng) {
    auto pick = [&rng](long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng);
    };
    long long prefix = pick(-6, 6);
    long long len = pick(0, 10);
    std::vector<Rat> body(static_cast<size_t>(len));
    for (auto& c : body)
        if (pick(0, 3) != 0) c = rat(static_cast<long>(pick(-9, 9)), static_cast<long>(pick(1, 5)));
    return PrefSeries::raw(prefix, std::move(body), prefix + len - 1 + pick(2, 8));
}

void properties() {
    std::mt19937 rng(20260814);
    int cases = 0;
    bool ok = true;
    for (int i = 0; i < 120; ++i) {
        PrefSeries a = random_series(rng), b = random_series(rng), c = random_series(rng);
        ++cases;
        if (compare_series(ps_mul(a, b), ps_mul(b, a)).failure) ok = false;
        if (compare_series(ps_mul(a, ps_add(b, c)), ps_add(ps_mul(a, b), ps_mul(a, c))).failure)
            ok = false;
        if (compare_series(ps_derivative_q(ps_mul(a, b)),
                           ps_add(ps_mul(ps_derivative_q(a), b), ps_mul(a, ps_derivative_q(b))))
                .failure)
            ok = false;
    }
    report(ok && cases >= 100, "ring and derivation laws hold on " + std::to_string(cases) +
                                   " randomized series triples");
}

} // namespace

int main() {
    exact_suite();
    divisor_suite();
    numeric_suite();
    printed_formula();
    pi_limit();
    mutation();
    properties();
    std::printf("%s (%d criterion failure%s)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
