#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace qtheta {

// Truncated formal series  q^{prefix/4} * (body[0] + body[1] q^{1/4} + ...)
// with exact rational coefficients on the quarter-integer exponent grid.
// All exponents and windows below are measured in quarter-units.
//
// known() is the absolute exponent through which every coefficient of the
// value is exact; nothing is claimed beyond it. The zero series is stored
// with an empty body and means "identically zero through known()".
// A normalized nonzero series has body.front() != 0 and body.back() != 0.
class PrefSeries {
public:
    PrefSeries() = default;

    static PrefSeries zero(long long known) {
        PrefSeries s;
        s.known_ = known;
        return s;
    }

    static PrefSeries constant(const Rat& c, long long known) {
        return monomial(c, 0, known);
    }

    static PrefSeries monomial(const Rat& c, long long exponent, long long known) {
        PrefSeries s;
        s.prefix_ = exponent;
        s.known_ = known;
        s.body_.push_back(c);
        s.normalize();
        return s;
    }

    static PrefSeries raw(long long prefix, std::vector<Rat> body, long long known) {
        PrefSeries s;
        s.prefix_ = prefix;
        s.body_ = std::move(body);
        s.known_ = known;
        s.normalize();
        return s;
    }

    bool is_zero() const { return body_.empty(); }
    long long prefix() const { return prefix_; }
    long long known() const { return known_; }
    // Truncation order relative to the prefix (quarter-units).
    long long trunc() const { return known_ - prefix_; }
    const std::vector<Rat>& body() const { return body_; }

    // First exponent at which a coefficient could be nonzero.
    long long lead_bound() const { return is_zero() ? known_ + 1 : prefix_; }

    // Coefficient at absolute exponent e (quarter-units); e must be <= known().
    const Rat& coeff_known(long long e) const {
        static const Rat kZero = 0;
        if (is_zero() || e < prefix_ || e > prefix_ + static_cast<long long>(body_.size()) - 1)
            return kZero;
        return body_[static_cast<size_t>(e - prefix_)];
    }

    std::optional<long long> first_nonzero() const {
        if (is_zero()) return std::nullopt;
        return prefix_;
    }

    PrefSeries trimmed(long long known_cap) const {
        PrefSeries s = *this;
        s.known_ = std::min(s.known_, known_cap);
        s.normalize();
        return s;
    }

private:
    void normalize() {
        if (known_ < prefix_) {
            // Every exponent within the window precedes the lead, hence is zero.
            body_.clear();
        }
        long long max_len = known_ - prefix_ + 1;
        if (static_cast<long long>(body_.size()) > max_len)
            body_.resize(static_cast<size_t>(std::max<long long>(max_len, 0)));
        size_t lo = 0;
        while (lo < body_.size() && body_[lo] == 0) ++lo;
        if (lo == body_.size()) {
            body_.clear();
        } else {
            if (lo > 0) {
                body_.erase(body_.begin(), body_.begin() + static_cast<std::ptrdiff_t>(lo));
                prefix_ += static_cast<long long>(lo);
            }
            while (!body_.empty() && body_.back() == 0) body_.pop_back();
        }
        if (body_.empty()) prefix_ = 0;
    }

    long long prefix_ = 0;
    long long known_ = -1;
    std::vector<Rat> body_;
};

inline PrefSeries ps_add(const PrefSeries& a, const PrefSeries& b) {
    long long K = std::min(a.known(), b.known());
    long long lo = std::numeric_limits<long long>::max();
    for (const PrefSeries* s : {&a, &b})
        if (!s->is_zero() && s->prefix() <= K) lo = std::min(lo, s->prefix());
    if (lo == std::numeric_limits<long long>::max()) return PrefSeries::zero(K);
    std::vector<Rat> body(static_cast<size_t>(K - lo + 1));
    for (const PrefSeries* s : {&a, &b}) {
        const auto& sb = s->body();
        for (size_t i = 0; i < sb.size(); ++i) {
            long long e = s->prefix() + static_cast<long long>(i);
            if (e > K) break;
            body[static_cast<size_t>(e - lo)] += sb[i];
        }
    }
    return PrefSeries::raw(lo, std::move(body), K);
}

inline PrefSeries ps_neg(const PrefSeries& a) {
    std::vector<Rat> body = a.body();
    for (auto& c : body) c = -c;
    return PrefSeries::raw(a.prefix(), std::move(body), a.known());
}

inline PrefSeries ps_sub(const PrefSeries& a, const PrefSeries& b) {
    return ps_add(a, ps_neg(b));
}

inline PrefSeries ps_scale(const PrefSeries& a, const Rat& c) {
    if (c == 0) return PrefSeries::zero(a.known());
    std::vector<Rat> body = a.body();
    for (auto& x : body) x *= c;
    return PrefSeries::raw(a.prefix(), std::move(body), a.known());
}

inline PrefSeries ps_mul(const PrefSeries& a, const PrefSeries& b) {
    long long K = std::min(a.known() + b.lead_bound(), b.known() + a.lead_bound());
    if (a.is_zero() || b.is_zero()) return PrefSeries::zero(K);
    long long lo = a.prefix() + b.prefix();
    long long n = K - lo + 1;
    if (n <= 0) return PrefSeries::zero(K);
    std::vector<Rat> body(static_cast<size_t>(n));
    const auto& ab = a.body();
    const auto& bb = b.body();
    for (size_t i = 0; i < ab.size() && static_cast<long long>(i) < n; ++i) {
        if (ab[i] == 0) continue;
        size_t jmax = std::min(bb.size(), static_cast<size_t>(n - static_cast<long long>(i)));
        for (size_t j = 0; j < jmax; ++j) {
            if (bb[j] == 0) continue;
            body[i + j] += ab[i] * bb[j];
        }
    }
    return PrefSeries::raw(lo, std::move(body), K);
}

inline PrefSeries ps_pow(const PrefSeries& a, unsigned k) {
    if (k == 0) return PrefSeries::constant(1, a.known());
    PrefSeries r = a;
    for (unsigned i = 1; i < k; ++i) r = ps_mul(r, a);
    return r;
}

inline PrefSeries ps_div(const PrefSeries& a, const PrefSeries& b) {
    if (b.is_zero()) throw DivisionByZeroSeries{};
    long long Lb = b.prefix();
    long long K = std::min(a.known() - Lb, b.known() - 2 * Lb + a.lead_bound());
    if (a.is_zero()) return PrefSeries::zero(K);
    long long lo = a.prefix() - Lb;
    long long n = K - lo + 1;
    if (n <= 0) return PrefSeries::zero(K);
    const auto& ab = a.body();
    const auto& bb = b.body();
    const Rat& b0 = bb[0];
    std::vector<Rat> c(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
        Rat acc = (i < static_cast<long long>(ab.size())) ? ab[static_cast<size_t>(i)] : Rat(0);
        long long jlo = std::max<long long>(0, i - static_cast<long long>(bb.size()) + 1);
        for (long long j = jlo; j < i; ++j) {
            const Rat& cj = c[static_cast<size_t>(j)];
            if (cj == 0) continue;
            acc -= cj * bb[static_cast<size_t>(i - j)];
        }
        c[static_cast<size_t>(i)] = acc / b0;
    }
    return PrefSeries::raw(lo, std::move(c), K);
}

inline PrefSeries ps_derivative_q(const PrefSeries& a) {
    long long K = a.known() - 4;
    if (a.is_zero()) return PrefSeries::zero(K);
    std::vector<Rat> body(a.body().size());
    for (size_t i = 0; i < body.size(); ++i) {
        long long e = a.prefix() + static_cast<long long>(i);
        body[i] = a.body()[i] * rat(static_cast<long>(e), 4);
    }
    return PrefSeries::raw(a.prefix() - 4, std::move(body), K);
}

inline PrefSeries ps_integrate_q(const PrefSeries& a) {
    long long K = a.known() + 4;
    if (a.is_zero()) return PrefSeries::zero(K);
    std::vector<Rat> body(a.body().size());
    for (size_t i = 0; i < body.size(); ++i) {
        long long e = a.prefix() + static_cast<long long>(i);
        if (e == -4) {
            if (a.body()[i] != 0) throw LogTermRequired{};
            continue;
        }
        body[i] = a.body()[i] * rat(4, static_cast<long>(e + 4));
    }
    return PrefSeries::raw(a.prefix() + 4, std::move(body), K);
}

inline PrefSeries ps_log(const PrefSeries& a) {
    if (a.is_zero() || a.prefix() != 0 || a.body()[0] != 1) throw NonUnitLog{};
    return ps_integrate_q(ps_div(ps_derivative_q(a), a));
}

inline PrefSeries ps_subst_power(const PrefSeries& a, long long m) {
    if (m < 1) throw InvalidArgument("ps_subst_power requires m >= 1");
    long long K = a.known() * m;
    if (a.is_zero()) return PrefSeries::zero(K);
    std::vector<Rat> body(static_cast<size_t>((a.body().size() - 1) * m + 1));
    for (size_t i = 0; i < a.body().size(); ++i) body[i * m] = a.body()[i];
    return PrefSeries::raw(a.prefix() * m, std::move(body), K);
}

inline PrefSeries ps_subst_negate(const PrefSeries& a) {
    if (a.is_zero()) return a;
    if (((a.prefix() % 4) + 4) % 4 != 0) throw FractionalNegation{};
    std::vector<Rat> body(a.body().size());
    for (size_t i = 0; i < body.size(); ++i) {
        if (a.body()[i] == 0) continue;
        long long e = a.prefix() + static_cast<long long>(i);
        if (e % 4 != 0) throw FractionalNegation{};
        body[i] = ((e / 4) % 2 != 0) ? -a.body()[i] : a.body()[i];
    }
    return PrefSeries::raw(a.prefix(), std::move(body), a.known());
}

// Exact multiplication by the monomial q^{d/4}.
inline PrefSeries ps_shift(const PrefSeries& a, long long d) {
    if (a.is_zero()) return PrefSeries::zero(a.known() + d);
    return PrefSeries::raw(a.prefix() + d, a.body(), a.known() + d);
}

// Lenient accessor for the check engine: zero below the prefix, but still
// refuses to read past the window.
inline Rat ps_coeff_or_zero(const PrefSeries& a, long long e) {
    if (e > a.known()) throw OutOfWindow("exponent exceeds the truncation window");
    return a.coeff_known(e);
}

// Coefficient of q^{num/den}, den dividing 4; strict accessor with window policing.
inline Rat ps_coeff(const PrefSeries& a, long long num, long long den = 1) {
    if (den != 1 && den != 2 && den != 4)
        throw InvalidArgument("exponent denominator must divide 4");
    long long e = num * (4 / den);
    if (e > a.known()) throw OutOfWindow("exponent exceeds the truncation window");
    if (!a.is_zero() && e < a.prefix()) throw OutOfWindow("exponent precedes the prefix");
    return a.coeff_known(e);
}

} // namespace qtheta
