#pragma once

#include "report.hpp"
#include "series.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace qtheta {

enum class WeightKind { one, inv, lin, cube };

// Per-term weight w(n): 1, 1/(kappa n + lambda), (kappa n + lambda), or
// (kappa n + lambda)^3.
struct Weight {
    WeightKind kind = WeightKind::one;
    long long kappa = 0;
    long long lambda = 0;
};

inline Weight weight_one() { return {}; }
inline Weight weight_inv(long long kappa, long long lambda) { return {WeightKind::inv, kappa, lambda}; }
inline Weight weight_lin(long long kappa, long long lambda) { return {WeightKind::lin, kappa, lambda}; }
inline Weight weight_cube(long long kappa, long long lambda) { return {WeightKind::cube, kappa, lambda}; }

// coef * q^{alpha n + beta}
struct Numerator {
    Rat coef;
    long long alpha = 1;
    long long beta = 0;
};

// sum_{n >= n_start} w(n) * (sum_j coef_j q^{alpha_j n + beta_j}) / (1 - q^{gamma n + delta})^p
struct LambertSpec {
    Weight weight;
    std::vector<Numerator> numerators;
    long long gamma = 1;
    long long delta = 0;
    int p = 1;
    long long n_start = 1;
};

namespace detail {

inline Rat weight_value(const Weight& w, long long n) {
    switch (w.kind) {
        case WeightKind::one: return 1;
        case WeightKind::inv: return rat(1, static_cast<long>(w.kappa * n + w.lambda));
        case WeightKind::lin: return rat(static_cast<long>(w.kappa * n + w.lambda));
        case WeightKind::cube: {
            Rat v = rat(static_cast<long>(w.kappa * n + w.lambda));
            return v * v * v;
        }
    }
    return 0;
}

inline void validate_lambert(const LambertSpec& spec) {
    if (spec.numerators.empty()) throw InvalidArgument("lambert series needs at least one numerator");
    if (spec.p < 1) throw InvalidArgument("denominator power must be at least 1");
    for (const auto& nm : spec.numerators) {
        if (nm.alpha <= 0) throw NonTerminating{};
        if (nm.alpha * spec.n_start + nm.beta < 0)
            throw InvalidArgument("numerator exponent negative at the starting index");
    }
    if (spec.gamma < 1 || spec.gamma * spec.n_start + spec.delta < 1)
        throw InvalidArgument("denominator exponent must stay positive");
    if (spec.weight.kind == WeightKind::inv) {
        long long kappa = spec.weight.kappa, lambda = spec.weight.lambda;
        if (kappa == 0) {
            if (lambda == 0) throw InvalidArgument("weight denominator vanishes");
        } else if ((-lambda) % kappa == 0 && (-lambda) / kappa >= spec.n_start) {
            throw InvalidArgument("weight denominator vanishes");
        }
    }
}

} // namespace detail

// Exact expansion of the Lambert-type sum through q^T.
inline PrefSeries lambert_series(const LambertSpec& spec, long long T) {
    detail::validate_lambert(spec);
    if (T < 0) throw InvalidArgument("truncation order must be nonnegative");
    long long Kq = 4 * T;
    std::vector<Rat> acc(static_cast<size_t>(Kq + 1));
    for (long long n = spec.n_start;; ++n) {
        long long lead = spec.numerators[0].alpha * n + spec.numerators[0].beta;
        for (const auto& nm : spec.numerators)
            lead = std::min(lead, nm.alpha * n + nm.beta);
        if (lead > T) break;
        Rat w = detail::weight_value(spec.weight, n);
        if (w == 0) continue;
        long long E = spec.gamma * n + spec.delta;
        for (const auto& nm : spec.numerators) {
            long long base = nm.alpha * n + nm.beta;
            if (base > T) continue;
            Rat c = w * nm.coef;
            for (long long k = 0; base + k * E <= T; ++k) {
                Rat term = (spec.p == 1) ? c : c * geometric_binomial(k, spec.p);
                acc[static_cast<size_t>(4 * (base + k * E))] += term;
            }
        }
    }
    return PrefSeries::raw(0, std::move(acc), Kq);
}

inline PrefSeries lambert_sum(const std::vector<LambertSpec>& specs, long long T) {
    PrefSeries s = PrefSeries::zero(4 * T);
    for (const auto& spec : specs) s = ps_add(s, lambert_series(spec, T));
    return s;
}

struct DivisorQuery {
    long long a = 1;
    long long b = 0;
    long long n = 1;
};

// Sum of divisors d of n whose codivisor n/d is congruent to b mod a.
inline long long sigma_star(const DivisorQuery& query) {
    if (query.a < 1 || query.b < 0 || query.b >= query.a)
        throw InvalidArgument("divisor class requires 0 <= b < a");
    if (query.n < 1) throw InvalidArgument("divisor sums need n >= 1");
    long long total = 0;
    for (long long d = 1; d * d <= query.n; ++d) {
        if (query.n % d != 0) continue;
        long long e = query.n / d;
        if (e % query.a == query.b) total += d;
        if (d != e && d % query.a == query.b) total += e;
    }
    return total;
}

// sum_{n=1..T} sigma*_{b(a)}(n) q^n
inline PrefSeries sigma_series(long long a, long long b, long long T) {
    std::vector<Rat> body(static_cast<size_t>(4 * T + 1));
    for (long long n = 1; n <= T; ++n)
        body[static_cast<size_t>(4 * n)] = rat(static_cast<long>(sigma_star({a, b, n})));
    return PrefSeries::raw(0, std::move(body), 4 * T);
}

// Confirms sum_{n} q^{an+b}/(1-q^{an+b})^2 = sum_j sigma*_{b(a)}(j) q^j through q^T.
inline CheckReport divisor_generating_check(long long a, long long b, long long T) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.id = "divisor_gen_" + std::to_string(a) + "_" + std::to_string(b);
    rep.kind = Kind::exact;
    LambertSpec spec;
    spec.numerators = {{1, a, b}};
    spec.gamma = a;
    spec.delta = b;
    spec.p = 2;
    spec.n_start = (b != 0) ? 0 : 1;
    SeriesComparison cmp = compare_series(lambert_series(spec, T), sigma_series(a, b, T));
    rep.window = cmp.window / 4;
    if (cmp.failure) {
        rep.status = Status::fail;
        rep.exact_failure = cmp.failure;
    } else {
        rep.status = (cmp.window >= 0) ? Status::pass : Status::window_too_small;
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace qtheta
