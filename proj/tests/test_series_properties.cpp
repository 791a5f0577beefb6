// Randomized algebraic invariants of the truncated series arithmetic.  Every
// comparison is made through compare-by-subtraction so that operations with
// different window bookkeeping are still checked over the range both sides
// actually know.

#include <qtheta/report.hpp>
#include <qtheta/series.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace qtheta;

namespace {

constexpr int kCases = 120;

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}

    long long pick(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng);
    }

    Rat coeff() {
        long num = static_cast<long>(pick(-9, 9));
        long den = static_cast<long>(pick(1, 5));
        return rat(num, den);
    }

    // General series on the quarter grid.
    PrefSeries series(long long min_prefix = -6) {
        long long prefix = pick(min_prefix, 6);
        long long len = pick(0, 10);
        std::vector<Rat> body(static_cast<size_t>(len));
        for (auto& c : body)
            if (pick(0, 3) != 0) c = coeff();
        long long known = prefix + len - 1 + pick(2, 8);
        return PrefSeries::raw(prefix, std::move(body), known);
    }

    // Unit series: constant term 1, suitable for ps_log.
    PrefSeries unit_series() {
        long long len = pick(1, 10);
        std::vector<Rat> body(static_cast<size_t>(len));
        body[0] = 1;
        for (size_t i = 1; i < body.size(); ++i)
            if (pick(0, 3) != 0) body[i] = coeff();
        return PrefSeries::raw(0, std::move(body), len - 1 + pick(2, 8));
    }

    // Invertible series: nonzero leading coefficient.
    PrefSeries invertible_series() {
        PrefSeries s = series();
        if (!s.is_zero() && s.coeff_known(s.prefix()) != 0) return s;
        long long len = pick(1, 8);
        std::vector<Rat> body(static_cast<size_t>(len));
        body[0] = rat(static_cast<long>(pick(1, 9)), static_cast<long>(pick(1, 4)));
        for (size_t i = 1; i < body.size(); ++i)
            if (pick(0, 2) != 0) body[i] = coeff();
        return PrefSeries::raw(pick(-4, 4), std::move(body), len + pick(4, 10));
    }

    // Series supported on integer powers of q (negation-compatible).
    PrefSeries integer_series() {
        long long prefix = 4 * pick(-2, 2);
        long long terms = pick(0, 6);
        std::vector<Rat> body(static_cast<size_t>(4 * terms + 1));
        for (long long t = 0; t <= terms; ++t)
            if (pick(0, 3) != 0) body[static_cast<size_t>(4 * t)] = coeff();
        return PrefSeries::raw(prefix, std::move(body), prefix + 4 * terms + pick(0, 3));
    }
};

void check_same(const PrefSeries& x, const PrefSeries& y) {
    SeriesComparison cmp = compare_series(x, y);
    if (cmp.failure) {
        CAPTURE(cmp.failure->exponent, rat_str(cmp.failure->lhs), rat_str(cmp.failure->rhs));
        FAIL("series disagree");
    }
}

} // namespace

TEST_CASE("addition is commutative and associative") {
    Gen g(1001);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series(), c = g.series();
        CAPTURE(i);
        check_same(ps_add(a, b), ps_add(b, a));
        check_same(ps_add(ps_add(a, b), c), ps_add(a, ps_add(b, c)));
    }
}

TEST_CASE("multiplication is commutative") {
    Gen g(1002);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series();
        CAPTURE(i);
        check_same(ps_mul(a, b), ps_mul(b, a));
    }
}

TEST_CASE("multiplication distributes over addition") {
    Gen g(1003);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series(), c = g.series();
        CAPTURE(i);
        check_same(ps_mul(a, ps_add(b, c)), ps_add(ps_mul(a, b), ps_mul(a, c)));
    }
}

TEST_CASE("pow agrees with repeated multiplication") {
    Gen g(1004);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series();
        CAPTURE(i);
        check_same(ps_pow(a, 2), ps_mul(a, a));
        check_same(ps_pow(a, 3), ps_mul(ps_mul(a, a), a));
    }
}

TEST_CASE("derivative satisfies the Leibniz rule") {
    Gen g(1005);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series();
        CAPTURE(i);
        check_same(ps_derivative_q(ps_mul(a, b)),
                   ps_add(ps_mul(ps_derivative_q(a), b), ps_mul(a, ps_derivative_q(b))));
    }
}

TEST_CASE("derivative is linear") {
    Gen g(1006);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series();
        Rat alpha = g.coeff(), beta = g.coeff();
        CAPTURE(i);
        check_same(ps_derivative_q(ps_add(ps_scale(a, alpha), ps_scale(b, beta))),
                   ps_add(ps_scale(ps_derivative_q(a), alpha), ps_scale(ps_derivative_q(b), beta)));
    }
}

TEST_CASE("integrating the derivative recovers the series up to its constant term") {
    Gen g(1007);
    int ran = 0;
    for (int i = 0; i < kCases + 40; ++i) {
        PrefSeries a = g.series(0); // nonnegative prefix keeps the integral log-free
        PrefSeries no_const = ps_sub(a, PrefSeries::constant(a.coeff_known(0), a.known()));
        CAPTURE(i);
        check_same(ps_integrate_q(ps_derivative_q(no_const)), no_const);
        ++ran;
    }
    CHECK(ran >= 100);
}

TEST_CASE("differentiating the integral is the identity") {
    Gen g(1008);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(0);
        CAPTURE(i);
        check_same(ps_derivative_q(ps_integrate_q(a)), a);
    }
}

TEST_CASE("log turns products into sums") {
    Gen g(1009);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.unit_series(), b = g.unit_series();
        CAPTURE(i);
        check_same(ps_log(ps_mul(a, b)), ps_add(ps_log(a), ps_log(b)));
    }
}

TEST_CASE("multiplying the quotient by the divisor returns the dividend") {
    Gen g(1010);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.invertible_series();
        CAPTURE(i);
        check_same(ps_mul(ps_div(a, b), b), a);
    }
}

TEST_CASE("substitution q -> q^m is a ring homomorphism") {
    Gen g(1011);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series(), b = g.series();
        long long m = g.pick(1, 4);
        CAPTURE(i, m);
        check_same(ps_subst_power(ps_add(a, b), m),
                   ps_add(ps_subst_power(a, m), ps_subst_power(b, m)));
        check_same(ps_subst_power(ps_mul(a, b), m),
                   ps_mul(ps_subst_power(a, m), ps_subst_power(b, m)));
    }
}

TEST_CASE("substitution q -> -q is an involutive ring homomorphism") {
    Gen g(1012);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.integer_series(), b = g.integer_series();
        CAPTURE(i);
        check_same(ps_subst_negate(ps_subst_negate(a)), a);
        check_same(ps_subst_negate(ps_mul(a, b)),
                   ps_mul(ps_subst_negate(a), ps_subst_negate(b)));
    }
}

TEST_CASE("scaling composes multiplicatively") {
    Gen g(1013);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series();
        Rat alpha = g.coeff(), beta = g.coeff();
        CAPTURE(i);
        check_same(ps_scale(ps_scale(a, alpha), beta), ps_scale(a, alpha * beta));
        check_same(ps_scale(a, alpha), ps_mul(PrefSeries::constant(alpha, a.known()), a));
    }
}

TEST_CASE("shift round trips and matches monomial multiplication") {
    Gen g(1014);
    for (int i = 0; i < kCases; ++i) {
        PrefSeries a = g.series();
        long long d = g.pick(-8, 8);
        CAPTURE(i, d);
        check_same(ps_shift(ps_shift(a, d), -d), a);
        check_same(ps_shift(a, d), ps_mul(PrefSeries::monomial(1, d, a.known() + d), a));
    }
}
