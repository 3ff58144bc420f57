// erfx: evaluate, invert, certify, tabulate and benchmark rational-exponent
// approximations of erf, erfc, the normal CDF and the Gaussian tail.
//
// Exit codes: 0 success, 1 failed bound or failed row, 2 usage error.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erfx/analysis.hpp"
#include "erfx/certify.hpp"
#include "erfx/inverse.hpp"

namespace {

using erfx::ApproxFunction;
using erfx::Target;
using erfx::Variant;
using erfx::g17;

enum class Format { Human, Csv, Json };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return Format::Human;
}

int usage_error(const std::string& msg) {
    std::fprintf(stderr, "erfx: %s\nrun 'erfx --help' for usage\n", msg.c_str());
    return 2;
}

bool parse_target(const std::string& s, Target& t) {
    if (s == "erf") t = Target::Erf;
    else if (s == "erfc") t = Target::Erfc;
    else if (s == "phi") t = Target::Phi;
    else if (s == "q") t = Target::Q;
    else return false;
    return true;
}

bool parse_variant(const std::string& s, Variant& v) {
    if (s == "improved") v = Variant::Improved;
    else if (s == "winitzki") v = Variant::Winitzki;
    else if (s == "clamped") v = Variant::Clamped;
    else return false;
    return true;
}

std::string jnum(double v) {
    return std::isfinite(v) ? g17(v) : std::string("null");
}

// shortest digit string that round-trips, so published constants print as
// published (4.125, 5.834, 0.147) where %.17g would pad them with noise
std::string shortest(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return res.ec == std::errc() ? std::string(buf, res.ptr) : g17(v);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
    std::string function, variant, grid;
    std::vector<double> xs;
    std::int64_t grid_count = 0;
};

int cmd_eval(const EvalArgs& a, Format fmt) {
    Target t;
    if (!parse_target(a.function, t))
        return usage_error("unknown function '" + a.function + "' (erf|erfc|phi|q)");
    const bool use_oracle = a.variant == "oracle";
    Variant v = Variant::Improved;
    if (!use_oracle && !parse_variant(a.variant, v))
        return usage_error("unknown variant '" + a.variant + "' (improved|winitzki|clamped|oracle)");
    if (!use_oracle && v == Variant::Winitzki && (t == Target::Phi || t == Target::Q))
        return usage_error("the winitzki variant covers erf and erfc only");

    std::vector<double> points = a.xs;
    if (points.empty()) {
        if (a.grid.empty())
            return usage_error("eval needs x values or --grid lo:hi");
        double lo = 0.0, hi = 0.0;
        if (std::sscanf(a.grid.c_str(), "%lf:%lf", &lo, &hi) != 2 || !(lo < hi))
            return usage_error("--grid expects lo:hi with lo < hi");
        const std::int64_t count = a.grid_count > 0 ? a.grid_count : 9;
        if (count < 2) return usage_error("--grid-count must be at least 2");
        for (std::int64_t i = 0; i < count; ++i)
            points.push_back(lo + (hi - lo) * double(i) / double(count - 1));
    }

    if (fmt == Format::Csv) std::printf("x,value,oracle,abs_err,rel_err\n");
    if (fmt == Format::Json) std::printf("[\n");
    if (fmt == Format::Human)
        std::printf("%-26s%-26s%-26s%-26s%s\n", "x", "value", "oracle", "abs_err", "rel_err");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        const double o = erfx::oracle_value(t, x);
        const double val = use_oracle ? o : erfx::evaluate(ApproxFunction{t, v}, x);
        const double abs = std::abs(val - o);
        const double rel = std::abs(o) < erfx::rel_oracle_floor
                               ? std::numeric_limits<double>::quiet_NaN()
                               : std::abs(val / o - 1.0);
        switch (fmt) {
            case Format::Human:
                std::printf("%-26s%-26s%-26s%-26s%s\n", g17(x).c_str(), g17(val).c_str(),
                            g17(o).c_str(), g17(abs).c_str(), g17(rel).c_str());
                break;
            case Format::Csv:
                std::printf("%s,%s,%s,%s,%s\n", g17(x).c_str(), g17(val).c_str(), g17(o).c_str(),
                            g17(abs).c_str(), g17(rel).c_str());
                break;
            case Format::Json:
                std::printf("  {\"x\": %s, \"value\": %s, \"oracle\": %s, \"abs_err\": %s, "
                            "\"rel_err\": %s}%s\n",
                            jnum(x).c_str(), jnum(val).c_str(), jnum(o).c_str(), jnum(abs).c_str(),
                            jnum(rel).c_str(), i + 1 < points.size() ? "," : "");
                break;
        }
    }
    if (fmt == Format::Json) std::printf("]\n");
    return 0;
}

// ---------------------------------------------------------------- invert

int cmd_invert(const std::string& function, const std::vector<double>& ys, bool polish, Format fmt) {
    Target t;
    if (!parse_target(function, t))
        return usage_error("unknown function '" + function + "' (erf|erfc|phi|q)");

    if (fmt == Format::Csv) std::printf("y,x,residual,status\n");
    if (fmt == Format::Json) std::printf("[\n");
    if (fmt == Format::Human) std::printf("%-26s%-26s%-26s%s\n", "y", "x", "residual", "status");
    bool any_failed = false;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double y = ys[i];
        bool ok = true;
        erfx::InverseResult<double> r{0.0, 0.0};
        try {
            switch (t) {
                case Target::Erf:  r = erfx::erf_approx_inv(y, polish); break;
                case Target::Erfc: r = erfx::erfc_approx_inv(y, polish); break;
                case Target::Phi:  r = erfx::phi_approx_inv(y, polish); break;
                case Target::Q:    r = erfx::q_approx_inv(y, polish); break;
            }
        } catch (const std::domain_error&) {
            ok = false;
            any_failed = true;
        }
        const char* status = ok ? "ok" : "domain_error";
        switch (fmt) {
            case Format::Human:
                if (ok)
                    std::printf("%-26s%-26s%-26s%s\n", g17(y).c_str(), g17(r.x).c_str(),
                                g17(r.residual).c_str(), status);
                else
                    std::printf("%-26s%-26s%-26s%s\n", g17(y).c_str(), "-", "-", status);
                break;
            case Format::Csv:
                if (ok)
                    std::printf("%s,%s,%s,%s\n", g17(y).c_str(), g17(r.x).c_str(),
                                g17(r.residual).c_str(), status);
                else
                    std::printf("%s,,,%s\n", g17(y).c_str(), status);
                break;
            case Format::Json:
                if (ok)
                    std::printf("  {\"y\": %s, \"x\": %s, \"residual\": %s, \"status\": \"%s\"}%s\n",
                                jnum(y).c_str(), jnum(r.x).c_str(), jnum(r.residual).c_str(), status,
                                i + 1 < ys.size() ? "," : "");
                else
                    std::printf("  {\"y\": %s, \"status\": \"%s\"}%s\n", jnum(y).c_str(), status,
                                i + 1 < ys.size() ? "," : "");
                break;
        }
    }
    if (fmt == Format::Json) std::printf("]\n");
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------- certify

void print_report_json(const char* name, const erfx::ErrorReport& r, bool last) {
    std::printf("    \"%s\": {\"max_abs\": %s, \"argmax_abs\": %s, \"max_rel\": %s, "
                "\"argmax_rel\": %s, \"points\": %lld, \"local_maxima\": [",
                name, jnum(r.max_abs).c_str(), jnum(r.argmax_abs).c_str(), jnum(r.max_rel).c_str(),
                jnum(r.argmax_rel).c_str(), static_cast<long long>(r.points));
    for (std::size_t i = 0; i < r.local_maxima.size(); ++i)
        std::printf("%s{\"x\": %s, \"abs_err\": %s}", i ? ", " : "",
                    jnum(r.local_maxima[i].x).c_str(), jnum(r.local_maxima[i].abs_err).c_str());
    std::printf("]}%s\n", last ? "" : ",");
}

int cmd_certify(std::int64_t grid_count, Format fmt) {
    erfx::CertifySettings s;
    if (grid_count > 0) s.grid_count = grid_count;
    if (s.grid_count < 2) return usage_error("--grid-count must be at least 2");
    const erfx::CertifyOutcome out = erfx::run_certification(s);

    switch (fmt) {
        case Format::Human:
            for (const auto& c : out.claims)
                std::printf("%s  %-20s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                            c.statement.c_str());
            std::printf("\n[report erf improved, %lld points on [0, 8]]\n%s",
                        static_cast<long long>(out.erf_report.points),
                        erfx::serialize(out.erf_report).c_str());
            std::printf("\n[report erf winitzki]\n%s", erfx::serialize(out.winitzki_report).c_str());
            std::printf("\n[report phi improved]\n%s", erfx::serialize(out.phi_report).c_str());
            break;
        case Format::Csv:
            std::printf("claim,pass,observed,statement\n");
            for (const auto& c : out.claims)
                std::printf("%s,%d,%s,%s\n", c.name.c_str(), c.pass ? 1 : 0, g17(c.observed).c_str(),
                            csv_quote(c.statement).c_str());
            break;
        case Format::Json:
            std::printf("{\n  \"claims\": [\n");
            for (std::size_t i = 0; i < out.claims.size(); ++i) {
                const auto& c = out.claims[i];
                std::printf("    {\"claim\": \"%s\", \"pass\": %s, \"observed\": %s}%s\n",
                            c.name.c_str(), c.pass ? "true" : "false", jnum(c.observed).c_str(),
                            i + 1 < out.claims.size() ? "," : "");
            }
            std::printf("  ],\n  \"reports\": {\n");
            print_report_json("erf_improved", out.erf_report, false);
            print_report_json("erf_winitzki", out.winitzki_report, false);
            print_report_json("phi_improved", out.phi_report, true);
            std::printf("  }\n}\n");
            break;
    }
    if (!out.all_pass) {
        std::string failed;
        for (const auto& c : out.claims)
            if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
        std::fprintf(stderr, "certify: FAILED: %s\n", failed.c_str());
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- table

struct TableItem {
    const char* item;
    const char* target;
    const char* form;
    erfx::RationalExponentCoeffs<double> coeffs;
    double abs_bound;
    double rel_bound;  // nan when the relative claim is a validity interval
    double rel_cap, rel_valid_b;
    const char* rel_note;
    double crossover;
    double saturation;
};

int cmd_table(Format fmt) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const TableItem items[] = {
        {"A", "erf", "sqrt(1 - e^E(x))", erfx::erf_coeffs(), 2.27e-5, 1.21e-4, nan, nan, "",
         4.125, 1.0},
        {"B", "erfc", "1 - sqrt(1 - e^E(x))", erfx::erf_coeffs(), 2.27e-5, nan, 0.01, 2.1588,
         "1% on [0,b], b>2.1588", 4.125, 0.0},
        {"C", "phi", "1/2 + 1/2 sqrt(1 - e^E(x))", erfx::phi_coeffs(), 1.14e-5, 1.78e-5, nan, nan,
         "", 5.834, 1.0},
        {"D", "q", "1/2 - 1/2 sqrt(1 - e^E(x))", erfx::phi_coeffs(), 1.14e-5, nan, 0.01, 3.053,
         "1% on [0,b], b>3.053", 5.834, 0.0},
    };

    switch (fmt) {
        case Format::Human:
            std::printf("E(x) = (n1 x^2 + n2 x^4) / (d0 + d1 x^2 + d2 x^4)\n\n");
            for (const auto& it : items) {
                std::printf("item %s: %s(x) ~ %s\n", it.item, it.target, it.form);
                std::printf("  n1=%s n2=%s d0=%s d1=%s d2=%s\n", shortest(it.coeffs.n1).c_str(),
                            shortest(it.coeffs.n2).c_str(), shortest(it.coeffs.d0).c_str(),
                            shortest(it.coeffs.d1).c_str(), shortest(it.coeffs.d2).c_str());
                std::printf("  abs error bound %s\n", shortest(it.abs_bound).c_str());
                if (std::isfinite(it.rel_bound))
                    std::printf("  rel error bound %s\n", shortest(it.rel_bound).c_str());
                else
                    std::printf("  rel error %s\n", it.rel_note);
                std::printf("  saturates to %s beyond x ~ %s\n\n", shortest(it.saturation).c_str(),
                            shortest(it.crossover).c_str());
            }
            break;
        case Format::Csv:
            std::printf("item,target,n1,n2,d0,d1,d2,abs_bound,rel_bound,rel_cap,rel_valid_b,"
                        "rel_note,crossover,saturation\n");
            for (const auto& it : items) {
                std::printf("%s,%s,%s,%s,%s,%s,%s,%s,", it.item, it.target,
                            shortest(it.coeffs.n1).c_str(), shortest(it.coeffs.n2).c_str(),
                            shortest(it.coeffs.d0).c_str(), shortest(it.coeffs.d1).c_str(),
                            shortest(it.coeffs.d2).c_str(), shortest(it.abs_bound).c_str());
                if (std::isfinite(it.rel_bound))
                    std::printf("%s,,,,", shortest(it.rel_bound).c_str());
                else
                    std::printf(",%s,%s,%s,", shortest(it.rel_cap).c_str(),
                                shortest(it.rel_valid_b).c_str(), csv_quote(it.rel_note).c_str());
                std::printf("%s,%s\n", shortest(it.crossover).c_str(),
                            shortest(it.saturation).c_str());
            }
            break;
        case Format::Json: {
            std::printf("{\"exponent_form\": \"(n1 x^2 + n2 x^4) / (d0 + d1 x^2 + d2 x^4)\",\n"
                        " \"items\": [\n");
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& it = items[i];
                std::printf("  {\"item\": \"%s\", \"target\": \"%s\", \"form\": \"%s\", "
                            "\"n1\": %s, \"n2\": %s, \"d0\": %s, \"d1\": %s, \"d2\": %s, "
                            "\"abs_bound\": %s, ",
                            it.item, it.target, it.form, shortest(it.coeffs.n1).c_str(),
                            shortest(it.coeffs.n2).c_str(), shortest(it.coeffs.d0).c_str(),
                            shortest(it.coeffs.d1).c_str(), shortest(it.coeffs.d2).c_str(),
                            shortest(it.abs_bound).c_str());
                if (std::isfinite(it.rel_bound))
                    std::printf("\"rel_bound\": %s, ", shortest(it.rel_bound).c_str());
                else
                    std::printf("\"rel_cap\": %s, \"rel_valid_b\": %s, \"rel_note\": \"%s\", ",
                                shortest(it.rel_cap).c_str(), shortest(it.rel_valid_b).c_str(),
                                it.rel_note);
                std::printf("\"crossover\": %s, \"saturation\": %s}%s\n",
                            shortest(it.crossover).c_str(), shortest(it.saturation).c_str(),
                            i + 1 < 4 ? "," : "");
            }
            std::printf(" ]}\n");
            break;
        }
    }
    return 0;
}

// ---------------------------------------------------------------- bench

template <class F>
double ns_per_eval(std::int64_t n, const std::vector<double>& in, F&& f) {
    double acc = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    std::int64_t done = 0;
    while (done < n) {
        for (double v : in) {
            acc += f(v);
            if (++done == n) break;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    volatile double sink = acc;  // keep every iteration live
    (void)sink;
    return std::chrono::duration<double, std::nano>(t1 - t0).count() / double(n);
}

int cmd_bench(std::int64_t n, std::int64_t batch, std::uint64_t seed, bool polish, Format fmt) {
    if (n < 10000) return usage_error("bench needs n of at least 10000 for stable timing");
    if (batch < 1 || batch > n) return usage_error("--batch must lie in [1, n]");

    std::mt19937_64 rng(seed);
    auto u01 = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> xs(batch), ys(batch);
    for (auto& v : xs) v = 8.0 * u01();
    for (auto& v : ys) v = 1.999998 * u01() - 0.999999;

    struct BenchRow {
        const char* name;
        double ns;
    };
    const BenchRow rows[] = {
        {"improved_erf", ns_per_eval(n, xs, [](double x) { return erfx::erf_approx(x); })},
        {"winitzki_erf", ns_per_eval(n, xs, [](double x) { return erfx::winitzki_erf(x); })},
        {"clamped_erf", ns_per_eval(n, xs, [](double x) { return erfx::clamped(Target::Erf, x); })},
        {"phi", ns_per_eval(n, xs, [](double x) { return erfx::phi_approx(x); })},
        {"inverse_erf",
         ns_per_eval(n, ys, [polish](double y) { return erfx::erf_approx_inv(y, polish).x; })},
        {"oracle_erf", ns_per_eval(n, xs, [](double x) { return erfx::erf_ref(x); })},
        {"native_erf", ns_per_eval(n, xs, [](double x) { return std::erf(x); })},
    };

    switch (fmt) {
        case Format::Human:
            std::printf("n=%lld batch=%lld seed=%llu\n", static_cast<long long>(n),
                        static_cast<long long>(batch), static_cast<unsigned long long>(seed));
            for (const auto& r : rows) std::printf("%-14s %s ns/eval\n", r.name, g17(r.ns).c_str());
            break;
        case Format::Csv:
            std::printf("name,ns_per_eval\n");
            for (const auto& r : rows) std::printf("%s,%s\n", r.name, g17(r.ns).c_str());
            break;
        case Format::Json:
            std::printf("[\n");
            for (std::size_t i = 0; i < std::size(rows); ++i)
                std::printf("  {\"name\": \"%s\", \"ns_per_eval\": %s}%s\n", rows[i].name,
                            jnum(rows[i].ns).c_str(), i + 1 < std::size(rows) ? "," : "");
            std::printf("]\n");
            break;
    }
    return 0;
}

// ---------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"rational-exponent approximations of erf, erfc, phi and q, "
                 "with closed-form inverses and certified error bounds"};
    app.require_subcommand(1);

    std::string format = "human";
    auto add_format = [&format](CLI::App* sub) {
        sub->add_option("--format", format, "output format (human|csv|json)")
            ->check(CLI::IsMember({"human", "csv", "json"}));
    };

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a function against the oracle");
    eval->add_option("function", eval_args.function, "erf|erfc|phi|q")->required();
    eval->add_option("variant", eval_args.variant, "improved|winitzki|clamped|oracle")->required();
    eval->add_option("x", eval_args.xs, "abscissae to evaluate");
    eval->add_option("--grid", eval_args.grid, "evaluate over lo:hi instead of listed x values");
    eval->add_option("--grid-count", eval_args.grid_count, "points in the --grid range (default 9)");
    add_format(eval);

    std::string inv_function;
    std::vector<double> inv_ys;
    bool polish = false;
    auto* invert = app.add_subcommand("invert", "closed-form inverse with roundtrip residual");
    invert->add_option("function", inv_function, "erf|erfc|phi|q")->required();
    invert->add_option("y", inv_ys, "values to invert")->required();
    invert->add_flag("--polish", polish, "guarded Newton touch-up of the closed-form root");
    add_format(invert);

    std::int64_t certify_grid = 0;
    auto* certify = app.add_subcommand(
        "certify", "certify every error bound, crossover, threshold and tail claim");
    certify->add_option("--grid-count", certify_grid, "scan density (default 1000000)");
    add_format(certify);

    auto* table = app.add_subcommand("table", "coefficient sets, bounds and saturation constants");
    add_format(table);

    std::int64_t bench_n = 0, bench_batch = 4096;
    std::uint64_t bench_seed = 12345;
    auto* bench = app.add_subcommand("bench", "ns/eval micro-benchmark");
    bench->add_option("n", bench_n, "total evaluations per timed function (>= 10000)")->required();
    bench->add_option("--batch", bench_batch, "input block cycled through the run");
    bench->add_option("--seed", bench_seed, "seed for the deterministic input sequence");
    bench->add_flag("--polish", polish, "bench the inverse with polish enabled");
    add_format(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Format fmt = parse_format(format);
    if (eval->parsed()) return cmd_eval(eval_args, fmt);
    if (invert->parsed()) return cmd_invert(inv_function, inv_ys, polish, fmt);
    if (certify->parsed()) return cmd_certify(certify_grid, fmt);
    if (table->parsed()) return cmd_table(fmt);
    if (bench->parsed()) return cmd_bench(bench_n, bench_batch, bench_seed, polish, fmt);
    return usage_error("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "erfx: %s\n", e.what());
        return 1;
    }
}
