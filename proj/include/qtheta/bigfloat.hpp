#pragma once

#include "errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <utility>

namespace qtheta {

constexpr long kMinDigits = 30;

inline mpfr_prec_t digits_to_bits(long digits) {
    return static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.3219280948873626) + 16;
}

// Real arbitrary-precision value; precision tracked in decimal digits.
// Binary operations round into min(digits of operands).
class BigFloat {
public:
    explicit BigFloat(long digits = kMinDigits) : digits_(checked(digits)) {
        mpfr_init2(v_, digits_to_bits(digits_));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) : digits_(o.digits_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept : digits_(o.digits_) {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        digits_ = o.digits_;
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_double(double x, long digits) {
        BigFloat r(digits);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_long(long x, long digits) {
        BigFloat r(digits);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_mpq(const mpq_t v, long digits) {
        BigFloat r(digits);
        mpfr_set_q(r.v_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(long digits) {
        BigFloat r(digits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    long digits() const { return digits_; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", static_cast<int>(std::min<long>(digits_, 40)) - 1, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::min(a.digits_, b.digits_));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::min(a.digits_, b.digits_));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::min(a.digits_, b.digits_));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::min(a.digits_, b.digits_));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.digits_);
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator*(long s) const {
        BigFloat r(digits_);
        mpfr_mul_si(r.v_, v_, s, MPFR_RNDN);
        return r;
    }
    BigFloat operator/(long s) const {
        BigFloat r(digits_);
        mpfr_div_si(r.v_, v_, s, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    bool less_than(double x) const { return mpfr_cmp_d(v_, x) < 0; }
    bool greater_than(double x) const { return mpfr_cmp_d(v_, x) > 0; }

    BigFloat abs() const {
        BigFloat r(digits_);
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat exp() const {
        BigFloat r(digits_);
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    // natural log; caller guarantees positivity
    BigFloat log() const {
        BigFloat r(digits_);
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    double log10_to_double() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        BigFloat r(digits_);
        mpfr_log10(r.v_, v_, MPFR_RNDN);
        return r.to_double();
    }
    static BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::min(a.digits_, b.digits_));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(std::min(y.digits_, x.digits_));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    // sin and cos of the same angle in one reduction
    static void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c) {
        s = BigFloat(a.digits_);
        c = BigFloat(a.digits_);
        mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
    }

private:
    static long checked(long digits) {
        if (digits < kMinDigits) throw InvalidArgument("precision must be at least 30 digits");
        return digits;
    }

    long digits_;
    mpfr_t v_;
};

class BigComplex {
public:
    explicit BigComplex(long digits = kMinDigits) : re_(digits), im_(digits) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

    static BigComplex from(std::complex<double> v, long digits) {
        return {BigFloat::from_double(v.real(), digits), BigFloat::from_double(v.imag(), digits)};
    }
    static BigComplex from_long(long v, long digits) {
        return {BigFloat::from_long(v, digits), BigFloat::from_long(0, digits)};
    }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    long digits() const { return std::min(re_.digits(), im_.digits()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
    BigComplex operator*(long s) const { return {re_ * s, im_ * s}; }
    BigComplex operator/(long s) const { return {re_ / s, im_ / s}; }

    BigFloat abs() const { return BigFloat::hypot(re_, im_); }
    double log10_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return abs().log10_to_double();
    }

    BigComplex exp() const {
        BigFloat s(re_.digits()), c(re_.digits());
        BigFloat::sin_cos(im_, s, c);
        BigFloat m = re_.exp();
        return {m * c, m * s};
    }
    // principal branch
    BigComplex log() const {
        return {abs().log(), BigFloat::atan2(im_, re_)};
    }
    BigComplex pow_int(long n) const {
        if (n < 0) return BigComplex::from_long(1, digits()) / pow_int(-n);
        BigComplex acc = BigComplex::from_long(1, digits());
        BigComplex base = *this;
        unsigned long k = static_cast<unsigned long>(n);
        while (k > 0) {
            if (k & 1ul) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    std::string str() const { return re_.str() + (im_.sign() < 0 ? " - " : " + ") + im_.abs().str() + "i"; }

private:
    BigFloat re_;
    BigFloat im_;
};

} // namespace qtheta
