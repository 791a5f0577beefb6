#pragma once

#include "bigfloat.hpp"
#include "report.hpp"
#include "series.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qtheta {

inline BigComplex cadd_real(const BigComplex& a, const BigFloat& s) { return {a.re() + s, a.im()}; }
inline BigComplex csub_real(const BigComplex& a, const BigFloat& s) { return {a.re() - s, a.im()}; }
inline BigComplex cdiv_real(const BigComplex& a, const BigFloat& s) { return {a.re() / s, a.im() / s}; }
inline BigComplex cmul_real(const BigComplex& a, const BigFloat& s) { return {a.re() * s, a.im() * s}; }

// prod_{i>=0} (1 - c * step^i), tail cut once |c * step^i| < 10^{-(P+10)}.
inline BigComplex bf_pochhammer(const BigComplex& c, const BigComplex& step, long P) {
    if (P < kMinDigits) throw InvalidArgument("precision must be at least 30 digits");
    BigFloat sabs = step.abs();
    if (!sabs.less_than(1.0 - 1e-6))
        throw PrecisionUnderflow("pochhammer base too close to the unit circle");
    double cutoff = -(static_cast<double>(P) + 10.0);
    double l10s = sabs.log10_to_double();
    double l10c = c.log10_abs();
    constexpr double kTermCap = 1e7;
    if (l10c > cutoff && (l10c - cutoff) / (-l10s) > kTermCap)
        throw PrecisionUnderflow("pochhammer term budget exceeded");
    long digits = std::min(c.digits(), step.digits());
    BigComplex one = BigComplex::from_long(1, digits);
    BigComplex acc = one;
    BigComplex cur = c;
    for (double guard = 0; cur.log10_abs() >= cutoff; ++guard) {
        if (guard > kTermCap) throw PrecisionUnderflow("pochhammer term budget exceeded");
        acc = acc * (one - cur);
        cur = cur * step;
    }
    return acc;
}

// Base q^m with the analytically-continued logarithm L = m log q (principal
// log of q itself). Inner powers (q^m)^x are evaluated as exp(xL); taking the
// principal log of q^m instead would pick the wrong branch once
// |m arg q| > pi.
struct QBase {
    BigComplex q;
    long long m = 1;
    BigComplex L;
    BigComplex Qm;
    BigComplex Q2;

    QBase(const BigComplex& q_, long long m_)
        : q(q_), m(m_), L(q_.log() * static_cast<long>(m_)),
          Qm(q_.pow_int(static_cast<long>(m_))), Q2(Qm * Qm) {}
};

// sin_{q^m}(pi z) = Q^{(z-1/2)^2} (Q^{2z};Q^2)(Q^{2-2z};Q^2) / (Q;Q^2)^2, Q = q^m.
inline BigComplex bf_sinq_b(const QBase& b, const BigComplex& z, long P) {
    long d = z.digits();
    BigComplex half = BigComplex::from_long(1, d) / 2;
    BigComplex zmh = z - half;
    BigComplex pref = (zmh * zmh * b.L).exp();
    BigComplex two_z = z * 2;
    BigComplex top1 = bf_pochhammer((two_z * b.L).exp(), b.Q2, P);
    BigComplex top2 = bf_pochhammer(((BigComplex::from_long(2, d) - two_z) * b.L).exp(), b.Q2, P);
    BigComplex den = bf_pochhammer(b.Qm, b.Q2, P);
    return pref * top1 * top2 / (den * den);
}

// cos_{q^m}(pi z) = Q^{z^2} (Q^{1+2z};Q^2)(Q^{1-2z};Q^2) / (Q;Q^2)^2.
inline BigComplex bf_cosq_b(const QBase& b, const BigComplex& z, long P) {
    long d = z.digits();
    BigComplex pref = (z * z * b.L).exp();
    BigComplex one = BigComplex::from_long(1, d);
    BigComplex two_z = z * 2;
    BigComplex top1 = bf_pochhammer(((one + two_z) * b.L).exp(), b.Q2, P);
    BigComplex top2 = bf_pochhammer(((one - two_z) * b.L).exp(), b.Q2, P);
    BigComplex den = bf_pochhammer(b.Qm, b.Q2, P);
    return pref * top1 * top2 / (den * den);
}

// Pi_{q^m} = Q^{1/4} (Q^2;Q^2)^2 / (Q;Q^2)^2.
inline BigComplex bf_gosper_pi_b(const QBase& b, long P) {
    BigComplex pref = (b.L / 4).exp();
    BigComplex top = bf_pochhammer(b.Q2, b.Q2, P);
    BigComplex den = bf_pochhammer(b.Qm, b.Q2, P);
    return pref * top * top / (den * den);
}

inline BigComplex bf_sinq(const BigComplex& q, const BigComplex& z, long P) {
    return bf_sinq_b(QBase(q, 1), z, P);
}
inline BigComplex bf_cosq(const BigComplex& q, const BigComplex& z, long P) {
    return bf_cosq_b(QBase(q, 1), z, P);
}
inline BigComplex bf_gosper_pi(const BigComplex& q, long P) {
    return bf_gosper_pi_b(QBase(q, 1), P);
}

// sum_{n>=1} q^{an+b} / (1 - q^{cn+d})^p
inline BigComplex bf_lambert(const BigComplex& q, long a, long b, long c, long d, int p, long P) {
    double l10q = q.log10_abs();
    if (l10q >= 0) throw InvalidArgument("lambert sums need |q| < 1");
    long digits = q.digits();
    BigComplex one = BigComplex::from_long(1, digits);
    BigComplex total(digits);
    for (long n = 1;; ++n) {
        double lead = static_cast<double>(a * n + b) * l10q;
        if (lead < -(static_cast<double>(P) + 10.0)) break;
        BigComplex num = q.pow_int(a * n + b);
        BigComplex den = (one - q.pow_int(c * n + d)).pow_int(p);
        total = total + num / den;
    }
    return total;
}

// Evaluate an exact series at a numeric point (principal q^{1/4}); the tail
// beyond the window is simply dropped, so the caller owns the tail bound.
inline BigComplex bf_eval_series(const PrefSeries& s, const BigComplex& q, long P) {
    long digits = std::max<long>(q.digits(), P);
    if (s.is_zero()) return BigComplex(digits);
    BigComplex t = (q.log() / 4).exp();
    BigComplex acc(digits);
    for (size_t i = s.body().size(); i-- > 0;) {
        acc = acc * t;
        if (s.body()[i] != 0)
            acc = acc + BigComplex(BigFloat::from_mpq(s.body()[i].get_mpq_t(), digits),
                                   BigFloat::from_long(0, digits));
    }
    long long pf = s.prefix();
    if (pf >= 0)
        acc = acc * t.pow_int(static_cast<long>(pf));
    else
        acc = acc / t.pow_int(static_cast<long>(-pf));
    return acc;
}

struct FdResult {
    BigComplex value;
    double log10_error = 0.0;
};

// Central finite difference of order k with 4-level Richardson extrapolation
// in h^2. The error estimate is the gap between the last two diagonal entries.
inline FdResult fd_derivative(const std::function<BigComplex(const BigComplex&)>& f,
                              const BigComplex& w0, int k, const BigFloat& h, long P) {
    if (k < 1 || k > 4) throw InvalidArgument("derivative order must be between 1 and 4");
    double l10h = h.log10_to_double();
    if (static_cast<double>(k) * (-l10h) > static_cast<double>(P) / 2.0)
        throw StepTooSmall{};
    auto stencil = [&](const BigFloat& s) -> BigComplex {
        BigFloat s2 = s * 2;
        switch (k) {
            case 1:
                return cdiv_real(f(cadd_real(w0, s)) - f(csub_real(w0, s)), s2);
            case 2:
                return cdiv_real(f(cadd_real(w0, s)) - f(w0) * 2 + f(csub_real(w0, s)), s * s);
            case 3:
                return cdiv_real(f(cadd_real(w0, s2)) - f(cadd_real(w0, s)) * 2 +
                                     f(csub_real(w0, s)) * 2 - f(csub_real(w0, s2)),
                                 s * s * s2);
            default:
                return cdiv_real(f(cadd_real(w0, s2)) - f(cadd_real(w0, s)) * 4 + f(w0) * 6 -
                                     f(csub_real(w0, s)) * 4 + f(csub_real(w0, s2)),
                                 s * s * s * s);
        }
    };
    constexpr int kLevels = 4;
    BigComplex R[kLevels][kLevels];
    BigFloat s = h;
    for (int j = 0; j < kLevels; ++j) {
        R[j][0] = stencil(s);
        s = s / 2;
        long pow4 = 1;
        for (int i = 1; i <= j; ++i) {
            pow4 *= 4;
            R[j][i] = (R[j][i - 1] * pow4 - R[j - 1][i - 1]) / (pow4 - 1);
        }
    }
    FdResult out;
    out.value = R[kLevels - 1][kLevels - 1];
    out.log10_error = (R[kLevels - 1][kLevels - 1] - R[kLevels - 2][kLevels - 2]).log10_abs();
    return out;
}

// ---------------------------------------------------------------------------
// Sample plumbing for the numeric identity checks.

struct NumericSample {
    std::complex<double> q{0.2, 0.0};
    std::complex<double> z{0.17, 0.0};
    std::complex<double> x{0.21, 0.0};
    std::complex<double> y{0.34, 0.0};
    long P = 128;
    std::string label;
};

inline std::vector<NumericSample> default_samples(long P) {
    std::vector<std::complex<double>> qs = {{0.2, 0.0}, {0.35, 0.0}, {0.25, 0.1}};
    std::vector<double> zs = {0.17, 0.37};
    std::vector<NumericSample> out;
    for (const auto& q : qs)
        for (double z : zs) {
            NumericSample s;
            s.q = q;
            s.z = {z, 0.0};
            s.P = P;
            std::ostringstream lab;
            lab << "q=" << q.real();
            if (q.imag() != 0) lab << "+" << q.imag() << "i";
            lab << ",z=" << z;
            s.label = lab.str();
            out.push_back(std::move(s));
        }
    return out;
}

struct NumericOutcome {
    Status status = Status::pass;
    double max_residual = 0.0;
    double log10_residual = -std::numeric_limits<double>::infinity();
    double min_log10_residual = std::numeric_limits<double>::infinity();
    std::optional<NumericFailure> first_failure;
    long long samples = 0;
};

namespace detail {

// Working precision: guard digits absorb product roundoff.
inline long working_digits(long P) { return P + 15; }

inline NumericOutcome run_samples(const std::vector<NumericSample>& samples, double (*tol_log10)(long),
                                  const std::function<BigFloat(const NumericSample&, long)>& residual) {
    NumericOutcome out;
    for (const auto& s : samples) {
        BigFloat r = residual(s, working_digits(s.P));
        double l10 = r.log10_to_double();
        out.samples += 1;
        out.log10_residual = std::max(out.log10_residual, l10);
        out.min_log10_residual = std::min(out.min_log10_residual, l10);
        out.max_residual = std::max(out.max_residual, r.to_double());
        if (l10 > tol_log10(s.P) && !out.first_failure) {
            out.status = Status::fail;
            out.first_failure = NumericFailure{s.label, r.to_double()};
        }
    }
    return out;
}

inline double qtrig_tol(long P) { return -(static_cast<double>(P) - 20.0); }
inline double deriv_tol(long P) { return -(static_cast<double>(P) / 4.0 + 8.0); }

} // namespace detail

// ---------------------------------------------------------------------------
// Residuals of the individual q-trigonometric identities, one sample each.
// Arguments are in z-space (the function argument is w = pi z).

namespace qtrig {

inline BigFloat res_q_double_sq(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b2(q, 2), b4(q, 4);
    BigComplex sin2z = bf_sinq_b(b1, z * 2, Pw);
    BigComplex pi1 = bf_gosper_pi_b(b1, Pw), pi4 = bf_gosper_pi_b(b4, Pw);
    BigComplex lhs = sin2z * sin2z * (pi4 * pi4 * 4) / (pi1 * pi1);
    BigComplex s4 = bf_sinq_b(b4, z, Pw), s2 = bf_sinq_b(b2, z, Pw);
    BigComplex rhs = s4 * s4 - (s2 * s2) * (s2 * s2);
    return (lhs - rhs).abs();
}

inline BigFloat res_q_double2(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b2(q, 2);
    BigComplex lhs = bf_sinq_b(b1, z * 2, Pw);
    BigComplex rhs = bf_gosper_pi_b(b1, Pw) / bf_gosper_pi_b(b2, Pw) * bf_sinq_b(b2, z, Pw) *
                     bf_cosq_b(b2, z, Pw);
    return (lhs - rhs).abs();
}

inline BigFloat res_q_double3(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b2(q, 2);
    BigComplex lhs = bf_cosq_b(b1, z * 2, Pw);
    BigComplex c2 = bf_cosq_b(b2, z, Pw), s2 = bf_sinq_b(b2, z, Pw);
    return (lhs - (c2 * c2 - s2 * s2)).abs();
}

inline BigFloat res_q_double4_sq(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b2(q, 2), b4(q, 4);
    BigComplex sin2z = bf_sinq_b(b1, z * 2, Pw);
    BigComplex pi1 = bf_gosper_pi_b(b1, Pw), pi4 = bf_gosper_pi_b(b4, Pw);
    BigComplex lhs = sin2z * sin2z * (pi4 * pi4 * 4) / (pi1 * pi1);
    BigComplex c4 = bf_cosq_b(b4, z, Pw), c2 = bf_cosq_b(b2, z, Pw);
    BigComplex rhs = c4 * c4 - (c2 * c2) * (c2 * c2);
    return (lhs - rhs).abs();
}

inline BigFloat res_q_double5(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1);
    BigComplex lhs = bf_cosq_b(b1, z * 2, Pw);
    BigComplex c1 = bf_cosq_b(b1, z, Pw), s1 = bf_sinq_b(b1, z, Pw);
    return (lhs - ((c1 * c1) * (c1 * c1) - (s1 * s1) * (s1 * s1))).abs();
}

inline BigFloat res_q_triple(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b3(q, 3), b9(q, 9);
    BigComplex lhs = bf_sinq_b(b1, z * 3, Pw);
    BigComplex ratio = bf_gosper_pi_b(b1, Pw) / bf_gosper_pi_b(b9, Pw) / 3;
    BigComplex s9 = bf_sinq_b(b9, z, Pw);
    BigComplex s3 = bf_sinq_b(b3, z, Pw);
    BigComplex one = BigComplex::from_long(1, Pw);
    BigComplex rhs = ratio * s9 - (one + ratio) * (s3 * s3 * s3);
    return (lhs - rhs).abs();
}

inline BigFloat res_q_triple2(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b3(q, 3);
    BigComplex lhs = bf_sinq_b(b1, z * 3, Pw);
    BigComplex c3 = bf_cosq_b(b3, z, Pw), s3 = bf_sinq_b(b3, z, Pw);
    BigComplex rhs = bf_gosper_pi_b(b1, Pw) / bf_gosper_pi_b(b3, Pw) * (c3 * c3) * s3 - s3 * s3 * s3;
    return (lhs - rhs).abs();
}

inline BigFloat res_q_add3_corrected(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw);
    BigComplex x = BigComplex::from(s.x, Pw), y = BigComplex::from(s.y, Pw);
    QBase b1(q, 1), b3(q, 3);
    BigComplex lhs = bf_sinq_b(b3, y, Pw) * bf_sinq_b(b1, x * 2 - y, Pw) -
                     bf_sinq_b(b3, x, Pw) * bf_sinq_b(b1, y * 2 - x, Pw);
    BigComplex rhs = bf_cosq_b(b3, x, Pw) * bf_cosq_b(b1, y * 2 - x, Pw) -
                     bf_cosq_b(b3, y, Pw) * bf_cosq_b(b1, x * 2 - y, Pw);
    return (lhs - rhs).abs();
}

inline BigFloat res_q_add3_specialized(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), x = BigComplex::from(s.z, Pw);
    QBase b1(q, 1), b3(q, 3);
    BigComplex lhs = bf_sinq_b(b3, x, Pw) * bf_sinq_b(b1, x * 3, Pw);
    BigComplex rhs = bf_cosq_b(b3, x * 2, Pw) - bf_cosq_b(b3, x, Pw) * bf_cosq_b(b1, x * 3, Pw);
    return (lhs - rhs).abs();
}

// Printed form whose right side is literally X - X; the residual is |LHS|.
inline BigFloat res_q_add3_printed(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw);
    BigComplex x = BigComplex::from(s.x, Pw), y = BigComplex::from(s.y, Pw);
    QBase b1(q, 1), b3(q, 3);
    BigComplex lhs = bf_sinq_b(b3, x, Pw) * bf_sinq_b(b1, y * 2 - x, Pw) -
                     bf_sinq_b(b3, y, Pw) * bf_sinq_b(b1, x * 2 - y, Pw);
    return lhs.abs();
}

inline BigFloat res_parity(const NumericSample& s, long Pw) {
    BigComplex q = BigComplex::from(s.q, Pw), z = BigComplex::from(s.z, Pw);
    QBase b1(q, 1);
    BigComplex half = BigComplex::from_long(1, Pw) / 2;
    BigFloat r1 = (bf_sinq_b(b1, -z, Pw) + bf_sinq_b(b1, z, Pw)).abs();
    BigFloat r2 = (bf_cosq_b(b1, -z, Pw) - bf_cosq_b(b1, z, Pw)).abs();
    BigFloat r3 = (bf_cosq_b(b1, z, Pw) - bf_sinq_b(b1, half - z, Pw)).abs();
    BigFloat m = r1 < r2 ? r2 : r1;
    return m < r3 ? r3 : m;
}

// Derivative checks: finite differences in the argument w (z = w/pi) against
// closed forms in ln q, pi, Pi_q and Lambert sums.
inline BigFloat res_deriv(const NumericSample& s, long Pw, int which) {
    long P = s.P;
    BigComplex q = BigComplex::from(s.q, Pw);
    QBase b1(q, 1);
    BigFloat pi = BigFloat::pi(Pw);
    BigComplex lnq = q.log();
    BigFloat h = (BigFloat::from_long(10, Pw).log() *
                  BigFloat::from_double(-static_cast<double>(P) / 8.0, Pw))
                     .exp();
    BigComplex w0(Pw);
    auto fsin = [&](const BigComplex& w) { return bf_sinq_b(b1, cdiv_real(w, pi), Pw); };
    auto fcos = [&](const BigComplex& w) { return bf_cosq_b(b1, cdiv_real(w, pi), Pw); };
    BigComplex piq = bf_gosper_pi_b(b1, Pw);
    BigComplex closed(Pw);
    FdResult fd;
    switch (which) {
        case 1: { // sin_q' 0 = -(2 ln q / pi) Pi_q
            fd = fd_derivative(fsin, w0, 1, h, P);
            closed = -cdiv_real(lnq * piq * 2, pi);
            break;
        }
        case 3: { // sin_q^(3) 0 = -(2 ln^2 q / pi^3) Pi_q (6 + ln q - 24 ln q A)
            fd = fd_derivative(fsin, w0, 3, h, P);
            BigComplex A = bf_lambert(q, 2, 0, 2, 0, 2, Pw);
            BigComplex inner = BigComplex::from_long(6, Pw) + lnq - lnq * A * 24;
            closed = -cdiv_real(lnq * lnq * piq * inner * 2, pi * pi * pi);
            break;
        }
        case 2: { // cos_q'' 0 = (2 ln q / pi^2)(1 - 4 ln q B)
            fd = fd_derivative(fcos, w0, 2, h, P);
            BigComplex B = bf_lambert(q, 2, -1, 2, -1, 2, Pw);
            closed = cdiv_real(lnq * (BigComplex::from_long(1, Pw) - lnq * B * 4) * 2, pi * pi);
            break;
        }
        default: { // cos_q^(4) 0
            fd = fd_derivative(fcos, w0, 4, h, P);
            BigComplex B = bf_lambert(q, 2, -1, 2, -1, 2, Pw);
            BigComplex B2 = bf_lambert(q, 4, -2, 2, -1, 4, Pw);
            BigComplex ln2 = lnq * lnq;
            BigComplex inner = BigComplex::from_long(3, Pw) - ln2 * B * 8 - lnq * B * 24 +
                               ln2 * (B * B - B2) * 48;
            closed = cdiv_real(ln2 * inner * 4, pi * pi * pi * pi);
            break;
        }
    }
    return (fd.value - closed).abs();
}

} // namespace qtrig

// The limit probe |(1 - q^2) Pi_q - pi| along q -> 1.
inline NumericOutcome pi_limit_outcome(long P) {
    long Pw = detail::working_digits(P);
    NumericOutcome out;
    BigFloat pi = BigFloat::pi(Pw);
    double prev = std::numeric_limits<double>::infinity();
    const double qs[] = {0.9, 0.99, 0.999};
    double last = 0;
    for (double qd : qs) {
        BigComplex q = BigComplex::from({qd, 0.0}, Pw);
        BigComplex val = (BigComplex::from_long(1, Pw) - q * q) * bf_gosper_pi(q, Pw);
        double err = (val - BigComplex(pi, BigFloat::from_long(0, Pw))).abs().to_double();
        out.samples += 1;
        std::ostringstream lab;
        lab << "q=" << qd;
        if (err >= prev && !out.first_failure) {
            out.status = Status::fail;
            out.first_failure = NumericFailure{lab.str() + " (not decreasing)", err};
        }
        prev = err;
        last = err;
    }
    if (last >= 1e-2 && !out.first_failure) {
        out.status = Status::fail;
        out.first_failure = NumericFailure{"q=0.999 (error above 1e-2)", last};
    }
    out.max_residual = last;
    out.log10_residual = std::log10(last);
    out.min_log10_residual = out.log10_residual;
    return out;
}

} // namespace qtheta
