#pragma once

#include "series.hpp"

namespace qtheta {

namespace detail {

// prod_{i>=0} (1 + sign * q^{(c + i*step)/4}) truncated at quarter-exponent Kq.
inline PrefSeries qfactor_product(long long c, long long step, int sign, long long Kq) {
    if (c <= 0) throw InvalidArgument("pochhammer offset must be positive");
    if (step <= 0) throw InvalidArgument("pochhammer step must be positive");
    if (Kq < 0) throw InvalidArgument("truncation order must be nonnegative");
    std::vector<Rat> acc(static_cast<size_t>(Kq + 1));
    acc[0] = 1;
    for (long long e = c; e <= Kq; e += step) {
        for (long long j = Kq; j >= e; --j) {
            const Rat& src = acc[static_cast<size_t>(j - e)];
            if (src == 0) continue;
            if (sign > 0)
                acc[static_cast<size_t>(j)] += src;
            else
                acc[static_cast<size_t>(j)] -= src;
        }
    }
    return PrefSeries::raw(0, std::move(acc), Kq);
}

// q^{E} / (1 - q^{E})^2 = sum_{k>=1} k q^{kE}, E in whole q-units.
inline PrefSeries geometric_square_term(long long E, long long Kq) {
    std::vector<Rat> body(static_cast<size_t>(Kq + 1));
    for (long long k = 1; 4 * k * E <= Kq; ++k)
        body[static_cast<size_t>(4 * k * E)] = rat(static_cast<long>(k));
    return PrefSeries::raw(0, std::move(body), Kq);
}

} // namespace detail

// (q^{c/4}; q^m)_inf: c in quarter-units, base step m in whole q-units,
// truncated so that every coefficient through q^T is exact.
inline PrefSeries pochhammer_inf(long long c, long long m, long long T) {
    if (m <= 0) throw InvalidArgument("pochhammer step must be positive");
    return detail::qfactor_product(c, 4 * m, -1, 4 * T);
}

enum class ThetaKind { psi, phi, f_neg };

// Ramanujan theta functions with argument q^m, exact through q^T:
//   psi(q)  = (q^2;q^2)/(q;q^2)        -- sum q^{n(n+1)/2}
//   phi(q)  = (q^2;q^2)(-q;q^2)/((-q^2;q^2)(q;q^2))  -- sum q^{n^2} over Z
//   f(-q)   = (q;q)                    -- Euler product
inline PrefSeries theta(ThetaKind kind, long long m, long long T) {
    if (m <= 0) throw InvalidArgument("theta base power must be positive");
    if (T < 0) throw InvalidArgument("truncation order must be nonnegative");
    long long Kq = 4 * T;
    using detail::qfactor_product;
    switch (kind) {
        case ThetaKind::psi: {
            PrefSeries num = qfactor_product(8 * m, 8 * m, -1, Kq);
            PrefSeries den = qfactor_product(4 * m, 8 * m, -1, Kq);
            return ps_div(num, den);
        }
        case ThetaKind::phi: {
            PrefSeries num =
                ps_mul(qfactor_product(8 * m, 8 * m, -1, Kq), qfactor_product(4 * m, 8 * m, +1, Kq));
            PrefSeries den =
                ps_mul(qfactor_product(8 * m, 8 * m, +1, Kq), qfactor_product(4 * m, 8 * m, -1, Kq));
            return ps_div(num, den);
        }
        case ThetaKind::f_neg:
            return qfactor_product(4 * m, 4 * m, -1, Kq);
    }
    throw InvalidArgument("unknown theta kind");
}

// Pi_{q^m} = q^{m/4} psi(q^m)^2, exact through q^T.
inline PrefSeries gosper_pi(long long m, long long T) {
    PrefSeries psi = theta(ThetaKind::psi, m, T);
    return ps_shift(ps_mul(psi, psi), m).trimmed(4 * T);
}

// Coefficients of powers of u = q^{-z} - q^z in prod_n (1 - u^2 lambda_n(q)).
// Odd coefficients vanish by parity; they are carried anyway so the type
// mirrors the expansion through u^4.
enum class UParity { sin_type, cos_type };

struct UExpansion {
    PrefSeries u0;
    PrefSeries u1;
    PrefSeries u2;
    PrefSeries u3;
    PrefSeries u4;
    UParity parity = UParity::sin_type;
};

namespace detail {

inline UExpansion expansion_product(UParity parity, long long T) {
    if (T < 0) throw InvalidArgument("truncation order must be nonnegative");
    long long Kq = 4 * T;
    UExpansion r;
    r.u0 = PrefSeries::constant(1, Kq);
    r.u1 = PrefSeries::zero(Kq);
    r.u2 = PrefSeries::zero(Kq);
    r.u3 = PrefSeries::zero(Kq);
    r.u4 = PrefSeries::zero(Kq);
    r.parity = parity;
    // Factors whose lowest exponent exceeds T are congruent to 1 within the
    // window and can be dropped.
    for (long long n = 1;; ++n) {
        long long E = (parity == UParity::cos_type) ? 2 * n - 1 : 2 * n;
        if (E > T) break;
        PrefSeries lam = geometric_square_term(E, Kq);
        r.u4 = ps_sub(r.u4, ps_mul(lam, r.u2));
        r.u2 = ps_sub(r.u2, lam);
    }
    return r;
}

} // namespace detail

// prod_{n>=1} (1 - u^2 q^{2n}/(1-q^{2n})^2), the factor carrying sin_q.
inline UExpansion sin_expansion_product(long long T) {
    return detail::expansion_product(UParity::sin_type, T);
}

// prod_{n>=1} (1 - u^2 q^{2n-1}/(1-q^{2n-1})^2), the factor carrying cos_q.
inline UExpansion cos_expansion_product(long long T) {
    return detail::expansion_product(UParity::cos_type, T);
}

} // namespace qtheta
