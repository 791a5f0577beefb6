// Command-line front end: identity listing, verification runs, series dumps,
// and restricted divisor-sum tables.

#include <qtheta/registry.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace qtheta;

namespace {

constexpr const char* kVersion = "1.0.0";

json failure_json(const CheckReport& rep) {
    if (rep.exact_failure) {
        const auto& f = *rep.exact_failure;
        return json{{"exponent", exponent_str(f.exponent)},
                    {"lhs", rat_str(f.lhs)},
                    {"rhs", rat_str(f.rhs)}};
    }
    if (rep.numeric_failure) {
        const auto& f = *rep.numeric_failure;
        return json{{"sample", f.sample}, {"residual", f.residual}};
    }
    return nullptr;
}

json report_json(const CheckReport& rep) {
    return json{{"id", rep.id},
                {"kind", kind_str(rep.kind)},
                {"window", rep.window},
                {"status", status_str(rep.status)},
                {"first_failure", failure_json(rep)},
                {"elapsed_ms", rep.elapsed_ms}};
}

void print_report_text(const CheckReport& rep) {
    std::printf("%-22s %-7s %-17s window=%lld", rep.id.c_str(), kind_str(rep.kind),
                status_str(rep.status), rep.window);
    if (rep.kind == Kind::numeric && rep.status != Status::window_too_small)
        std::printf(" log10_residual=%.2f", rep.log10_residual);
    if (rep.exact_failure)
        std::printf(" first_failure: q^%s lhs=%s rhs=%s",
                    exponent_str(rep.exact_failure->exponent).c_str(),
                    rat_str(rep.exact_failure->lhs).c_str(),
                    rat_str(rep.exact_failure->rhs).c_str());
    if (rep.numeric_failure)
        std::printf(" first_failure: %s residual=%.3e", rep.numeric_failure->sample.c_str(),
                    rep.numeric_failure->residual);
    std::printf(" (%.1f ms)\n", rep.elapsed_ms);
}

int emit_reports(const std::vector<CheckReport>& reports, const std::string& format, long long T,
                 long P) {
    long long pass = 0, fail = 0;
    for (const auto& r : reports) (r.passed() ? pass : fail) += 1;
    if (format == "json") {
        json out;
        out["version"] = kVersion;
        out["params"] = json{{"terms", T}, {"precision", P}};
        out["reports"] = json::array();
        for (const auto& r : reports) out["reports"].push_back(report_json(r));
        out["summary"] = json{{"pass", pass}, {"fail", fail}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) print_report_text(r);
        std::printf("summary: %lld pass, %lld fail\n", pass, fail);
    }
    return fail == 0 ? 0 : 1;
}

// Expression used by the `series` subcommand.
PrefSeries series_expr(const std::string& expr, long long m, long long T) {
    if (expr == "psi") return theta(ThetaKind::psi, m, T);
    if (expr == "phi") return theta(ThetaKind::phi, m, T);
    if (expr == "fneg") return theta(ThetaKind::f_neg, m, T);
    if (expr == "pi") return gosper_pi(m, T);
    const std::pair<std::string, bool> sides[] = {{"identity-lhs:", true}, {"identity-rhs:", false}};
    for (const auto& [prefix, want_lhs] : sides) {
        if (expr.rfind(prefix, 0) == 0) {
            std::string id = expr.substr(prefix.size());
            const IdentityRecord& rec = find_identity(id);
            if (rec.kind != Kind::exact) throw KindMismatch(id);
            const ResidualPair& pair = rec.pairs.front();
            return (want_lhs ? pair.lhs : pair.rhs)(T);
        }
    }
    throw InvalidArgument("unknown series expression: " + expr);
}

int run_series(const std::string& expr, long long m, long long T, const std::string& format) {
    PrefSeries s = series_expr(expr, m, T);
    struct Row {
        std::string exponent;
        std::string coefficient;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < s.body().size(); ++i) {
        if (s.body()[i] == 0) continue;
        long long e = s.prefix() + static_cast<long long>(i);
        rows.push_back({exponent_str(e), rat_str(s.body()[i])});
    }
    if (format == "json") {
        json out;
        out["expr"] = expr;
        out["m"] = m;
        out["terms"] = T;
        out["window"] = exponent_str(s.known());
        out["coefficients"] = json::array();
        for (const auto& r : rows)
            out["coefficients"].push_back(json{{"exponent", r.exponent}, {"coefficient", r.coefficient}});
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::printf("exponent,coefficient\n");
        for (const auto& r : rows) std::printf("%s,%s\n", r.exponent.c_str(), r.coefficient.c_str());
    } else {
        std::printf("# %s (m=%lld), known through q^%s\n", expr.c_str(), m,
                    exponent_str(s.known()).c_str());
        for (const auto& r : rows)
            std::printf("q^%-8s %s\n", r.exponent.c_str(), r.coefficient.c_str());
    }
    return 0;
}

int run_table(long long a, long long b, long long N, const std::string& format) {
    struct Row {
        long long n;
        long long value;
    };
    std::vector<Row> rows;
    for (long long n = 1; n <= N; ++n) rows.push_back({n, sigma_star({a, b, n})});
    if (format == "json") {
        json out;
        out["a"] = a;
        out["b"] = b;
        out["values"] = json::array();
        for (const auto& r : rows) out["values"].push_back(json{{"n", r.n}, {"sigma", r.value}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("n,sigma_star_%lld_%lld\n", b, a);
        for (const auto& r : rows) std::printf("%lld,%lld\n", r.n, r.value);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification engine for Lambert series, theta products, and q-trigonometric identities"};
    app.require_subcommand(1);

    std::string format = "text";

    auto* list_cmd = app.add_subcommand("list", "List registered identities");
    std::string list_kind = "all";
    list_cmd->add_option("--kind", list_kind, "Filter: exact, numeric, all")
        ->check(CLI::IsMember({"exact", "numeric", "all"}));
    list_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "Verify identities");
    std::vector<std::string> ids;
    bool all = false;
    long long terms = 128;
    long precision = 128;
    verify_cmd->add_option("ids", ids, "Identity ids to verify");
    verify_cmd->add_flag("--all", all, "Verify every identity (skips documented expected failures)");
    verify_cmd->add_option("--terms", terms, "Truncation order for exact checks")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--precision", precision, "Decimal digits for numeric checks")
        ->check(CLI::Range(30L, 100000L));
    verify_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* series_cmd = app.add_subcommand("series", "Print the expansion of a named series");
    std::string expr = "psi";
    long long m = 1;
    long long series_terms = 32;
    series_cmd->add_option("--expr", expr,
                           "psi | phi | fneg | pi | identity-lhs:<id> | identity-rhs:<id>");
    series_cmd->add_option("--m", m, "Replace q by q^m")->check(CLI::PositiveNumber);
    series_cmd->add_option("--terms", series_terms, "Truncation order")->check(CLI::PositiveNumber);
    series_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    auto* table_cmd = app.add_subcommand("table", "Print restricted divisor sums");
    std::vector<long long> sigma_args;
    long long table_n = 20;
    table_cmd->add_option("--sigma-star", sigma_args, "Residue class: a b (divisors d with n/d = b mod a)")
        ->expected(2);
    table_cmd->add_option("--n", table_n, "Largest argument")->check(CLI::PositiveNumber);
    table_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            json arr = json::array();
            for (const IdentityRecord* rec : list_identities()) {
                if (list_kind == "exact" && rec->kind != Kind::exact) continue;
                if (list_kind == "numeric" && rec->kind != Kind::numeric) continue;
                if (format == "json") {
                    arr.push_back(json{{"id", rec->id},
                                       {"kind", kind_str(rec->kind)},
                                       {"expected_fail", rec->expected_fail},
                                       {"description", rec->description}});
                } else {
                    std::printf("%-22s %-7s %s%s\n", rec->id.c_str(), kind_str(rec->kind),
                                rec->expected_fail ? "[expected-fail] " : "",
                                rec->description.c_str());
                }
            }
            if (format == "json") std::cout << arr.dump(2) << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            if (all != ids.empty()) {
                std::fprintf(stderr, "verify: pass identity ids or --all (not both)\n");
                return 2;
            }
            std::vector<CheckReport> reports;
            if (all) {
                reports = check_all(KindFilter::all, terms, precision);
            } else {
                for (const auto& id : ids) {
                    const IdentityRecord& rec = find_identity(id);
                    reports.push_back(rec.kind == Kind::exact ? check_exact(id, terms)
                                                              : check_numeric(id, precision));
                }
            }
            return emit_reports(reports, format, terms, precision);
        }
        if (series_cmd->parsed()) return run_series(expr, m, series_terms, format);
        if (table_cmd->parsed()) {
            if (sigma_args.size() != 2) {
                std::fprintf(stderr, "table: --sigma-star a b is required\n");
                return 2;
            }
            return run_table(sigma_args[0], sigma_args[1], table_n, format);
        }
    } catch (const UnknownIdentity& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
