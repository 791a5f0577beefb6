// Arbitrary-precision numerics: special values, independent cross-checks
// against the exact series engine, finite differences, and the way residuals
// respond to added precision.

#include <qtheta/numeric.hpp>
#include <qtheta/registry.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qtheta;

TEST_CASE("bigfloat precision floor") {
    CHECK_THROWS_AS(BigFloat(20), InvalidArgument);
    CHECK_THROWS_AS(BigComplex::from({0.5, 0.0}, 29), InvalidArgument);
    CHECK_NOTHROW(BigFloat(30));
}

TEST_CASE("bigfloat arithmetic sanity") {
    long P = 50;
    BigFloat third = BigFloat::from_long(1, P) / BigFloat::from_long(3, P);
    BigFloat one = third * BigFloat::from_long(3, P);
    CHECK((one - BigFloat::from_long(1, P)).abs().log10_to_double() < -45.0);

    BigFloat pi = BigFloat::pi(P);
    CHECK(std::abs(pi.to_double() - 3.14159265358979) < 1e-13);

    // exp(log(x)) = x
    BigFloat x = BigFloat::from_double(2.25, P);
    CHECK((x.log().exp() - x).abs().log10_to_double() < -45.0);
}

TEST_CASE("bigcomplex principal log and integer powers") {
    long P = 60;
    BigComplex z = BigComplex::from({0.3, 0.4}, P);
    BigComplex w = z.log().exp();
    CHECK((w - z).abs().log10_to_double() < -55.0);

    BigComplex p3 = z.pow_int(3);
    BigComplex direct = z * z * z;
    CHECK((p3 - direct).abs().log10_to_double() < -55.0);

    BigComplex pm2 = z.pow_int(-2);
    BigComplex inv2 = BigComplex::from_long(1, P) / (z * z);
    CHECK((pm2 - inv2).abs().log10_to_double() < -55.0);
}

TEST_CASE("pochhammer product spot value") {
    long P = 60;
    // (1/2; 1/4): product over (1 - 2^{-1} 4^{-i})
    BigComplex a = BigComplex::from({0.5, 0.0}, P);
    BigComplex step = BigComplex::from({0.25, 0.0}, P);
    BigFloat got = bf_pochhammer(a, step, P).re();

    double expect = 1.0;
    double c = 0.5;
    for (int i = 0; i < 60; ++i, c *= 0.25) expect *= (1.0 - c);
    CHECK(std::abs(got.to_double() - expect) < 1e-14);

    // |step| >= 1 cannot converge
    BigComplex big = BigComplex::from({1.0, 0.0}, P);
    CHECK_THROWS_AS(bf_pochhammer(a, big, P), PrecisionUnderflow);
}

TEST_CASE("q-sine and q-cosine special values") {
    long P = 60;
    for (double qv : {0.2, 0.35}) {
        BigComplex q = BigComplex::from({qv, 0.0}, P);
        // sin at 0 and cos at pi/2 vanish by construction
        CHECK(bf_sinq(q, BigComplex::from_long(0, P), P).abs().to_double() == 0.0);
        CHECK(bf_cosq(q, BigComplex::from({0.5, 0.0}, P), P).abs().to_double() == 0.0);
        // sin at pi/2 is exactly 1
        BigComplex s = bf_sinq(q, BigComplex::from({0.5, 0.0}, P), P);
        CHECK((s - BigComplex::from_long(1, P)).abs().log10_to_double() < -50.0);
    }
}

TEST_CASE("product evaluation agrees with the exact series") {
    long P = 40;
    long long T = 150;
    PrefSeries pi_series = gosper_pi(1, T);
    PrefSeries psi_series = theta(ThetaKind::psi, 1, T);
    for (double qv : {0.2, 0.35, 0.5}) {
        CAPTURE(qv);
        BigComplex q = BigComplex::from({qv, 0.0}, P);

        BigComplex direct = bf_gosper_pi(q, P);
        BigComplex summed = bf_eval_series(pi_series, q, P);
        CHECK((direct - summed).abs().log10_to_double() < -(P - 5));

        // psi(q) = (q^2; q^2) / (q; q^2)
        BigComplex q2 = q * q;
        BigComplex psi_prod = bf_pochhammer(q2, q2, P) / bf_pochhammer(q, q2, P);
        BigComplex psi_sum = bf_eval_series(psi_series, q, P);
        CHECK((psi_prod - psi_sum).abs().log10_to_double() < -(P - 5));
    }
}

TEST_CASE("finite differences recover polynomial derivatives") {
    long P = 64;
    auto cube = [P](const BigComplex& w) { return w.pow_int(3); };
    BigComplex w0 = BigComplex::from({0.7, 0.0}, P);
    BigFloat h = BigFloat::from_double(1e-8, P);

    FdResult d1 = fd_derivative(cube, w0, 1, h, P);
    CHECK(std::abs(d1.value.re().to_double() - 3 * 0.7 * 0.7) < 1e-12);

    FdResult d2 = fd_derivative(cube, w0, 2, h, P);
    CHECK(std::abs(d2.value.re().to_double() - 6 * 0.7) < 1e-10);

    FdResult d3 = fd_derivative(cube, w0, 3, h, P);
    CHECK(std::abs(d3.value.re().to_double() - 6.0) < 1e-8);

    FdResult d4 = fd_derivative(cube, w0, 4, h, P);
    CHECK(std::abs(d4.value.re().to_double()) < 1e-6);
}

TEST_CASE("finite difference guard rails") {
    long P = 64;
    auto ident = [](const BigComplex& w) { return w; };
    BigComplex w0 = BigComplex::from({0.3, 0.0}, P);
    BigFloat h = BigFloat::from_double(1e-8, P);
    CHECK_THROWS_AS(fd_derivative(ident, w0, 0, h, P), InvalidArgument);
    CHECK_THROWS_AS(fd_derivative(ident, w0, 5, h, P), InvalidArgument);

    // k * digits(h) beyond half the precision: cancellation would eat the result
    BigFloat tiny = BigFloat::from_double(1e-20, P);
    CHECK_THROWS_AS(fd_derivative(ident, w0, 2, tiny, P), StepTooSmall);
}

TEST_CASE("doubling the precision drives q-trig residuals down accordingly") {
    for (const char* id : {"q_double2", "q_triple", "q_add3_corrected"}) {
        CAPTURE(id);
        const IdentityRecord& rec = find_identity(id);
        NumericOutcome lo = rec.numeric_fn(default_samples(60));
        NumericOutcome hi = rec.numeric_fn(default_samples(120));
        REQUIRE(lo.status == Status::pass);
        REQUIRE(hi.status == Status::pass);
        // at least 10^{P - 2G} shrinkage with P = 60, G = 20
        CHECK(hi.log10_residual <= lo.log10_residual - (60 - 40));
    }
}

TEST_CASE("doubling the precision strictly improves derivative residuals") {
    for (const char* id : {"deriv_sin1", "deriv_cos2"}) {
        CAPTURE(id);
        const IdentityRecord& rec = find_identity(id);
        NumericOutcome lo = rec.numeric_fn(default_samples(60));
        NumericOutcome hi = rec.numeric_fn(default_samples(120));
        REQUIRE(lo.status == Status::pass);
        REQUIRE(hi.status == Status::pass);
        CHECK(hi.log10_residual < lo.log10_residual);
    }
}

TEST_CASE("default samples cover both real and complex bases") {
    auto samples = default_samples(80);
    REQUIRE(samples.size() == 6);
    bool has_complex = false;
    for (const auto& s : samples) {
        CHECK(s.P == 80);
        CHECK(!s.label.empty());
        if (s.q.imag() != 0) has_complex = true;
    }
    CHECK(has_complex);
}

TEST_CASE("pi limit probes behave") {
    NumericOutcome out = pi_limit_outcome(64);
    CHECK(out.status == Status::pass);
    // final probe error is about 3.1e-3
    CHECK(out.log10_residual < -2.0);
    CHECK(out.log10_residual > -4.0);
}
