#pragma once

#include "series.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace qtheta {

enum class Kind { exact, numeric };
enum class Status { pass, fail, window_too_small };

inline const char* kind_str(Kind k) { return k == Kind::exact ? "exact" : "numeric"; }

inline const char* status_str(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::window_too_small: return "window_too_small";
    }
    return "?";
}

// Quarter-unit exponent rendered as a reduced rational ("9/4", "3/2", "7").
inline std::string exponent_str(long long e) {
    Rat r = rat(static_cast<long>(e), 4);
    return rat_str(r);
}

struct ExactFailure {
    long long exponent = 0; // quarter-units
    Rat lhs;
    Rat rhs;
};

struct NumericFailure {
    std::string sample;
    double residual = 0.0;
};

struct CheckReport {
    std::string id;
    Kind kind = Kind::exact;
    // Verified q-exponent window for exact checks; working precision in
    // decimal digits for numeric checks.
    long long window = 0;
    Status status = Status::pass;
    std::optional<ExactFailure> exact_failure;
    std::optional<NumericFailure> numeric_failure;
    double max_residual = 0.0;
    double log10_residual = -std::numeric_limits<double>::infinity();
    double elapsed_ms = 0.0;

    bool passed() const { return status == Status::pass; }
};

// Difference lhs - rhs inspected over the common window.
struct SeriesComparison {
    long long window = -1; // quarter-units actually verified
    std::optional<ExactFailure> failure;
};

inline SeriesComparison compare_series(const PrefSeries& lhs, const PrefSeries& rhs) {
    SeriesComparison out;
    PrefSeries diff = ps_sub(lhs, rhs);
    out.window = diff.known();
    if (!diff.is_zero()) {
        long long e = *diff.first_nonzero();
        out.failure = ExactFailure{e, ps_coeff_or_zero(lhs, e), ps_coeff_or_zero(rhs, e)};
    }
    return out;
}

} // namespace qtheta
