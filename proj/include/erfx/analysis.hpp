#pragma once

// Dense-scan certification of the approximations against the reference
// oracle: global and local error extrema, saturation crossover abscissae,
// relative-error validity thresholds, and the far-tail certificate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "oracle.hpp"

namespace erfx {

enum class Spacing { Uniform, Log };

struct GridSpec {
    double start = 0.0;
    double end = 1.0;
    std::int64_t count = 2;
    Spacing spacing = Spacing::Uniform;
};

inline void validate(const GridSpec& g) {
    if (!(g.start < g.end)) throw std::domain_error("GridSpec: start must be below end");
    if (g.count < 2) throw std::domain_error("GridSpec: count must be at least 2");
    if (g.spacing == Spacing::Log && !(g.start > 0.0))
        throw std::domain_error("GridSpec: log spacing requires start > 0");
}

inline double grid_point(const GridSpec& g, std::int64_t i) {
    if (i <= 0) return g.start;
    if (i >= g.count - 1) return g.end;
    const double f = double(i) / double(g.count - 1);
    if (g.spacing == Spacing::Uniform) return g.start + f * (g.end - g.start);
    return g.start * std::exp(f * std::log(g.end / g.start));
}

struct LocalMaximum {
    double x;
    double abs_err;
};

struct ErrorReport {
    double max_abs = 0.0;
    double argmax_abs = 0.0;
    double max_rel = 0.0;
    double argmax_rel = 0.0;
    std::int64_t points = 0;
    GridSpec grid;
    std::vector<LocalMaximum> local_maxima;  // sorted by x
};

inline double oracle_value(Target t, double x, const OracleConfig& cfg = {}) {
    switch (t) {
        case Target::Erf:  return erf_ref(x, cfg);
        case Target::Erfc: return erfc_ref(x, cfg);
        case Target::Phi:  return phi_ref(x, cfg);
        case Target::Q:    return q_ref(x, cfg);
    }
    throw std::domain_error("oracle_value: unknown target");
}

// Relative error is not evaluated where the oracle magnitude sits below this
// floor (erf at the origin, the erfc tail past x ~ 26.6 where binary64
// underflows to zero).
inline constexpr double rel_oracle_floor = 1e-300;

// Local maxima below this fraction of the global maximum are rounding noise:
// approaching saturation the error curve degenerates into a last-place
// staircase (~1e-16 teeth) that would otherwise bury the genuine peaks.
inline constexpr double local_max_noise_frac = 1e-3;

// Grid evaluation may be partitioned across threads (the vectors are filled
// by disjoint index ranges), but every reduction below is sequential, so the
// report is bit-identical for any thread count.
inline ErrorReport scan(ApproxFunction f, const GridSpec& grid,
                        const OracleConfig& cfg = {}, unsigned threads = 0) {
    validate(grid);
    validate(cfg);
    const std::int64_t n = grid.count;
    std::vector<double> abs_err(n);
    std::vector<double> rel_err(n);  // negative marks "skipped"

    auto fill = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const double x = grid_point(grid, i);
            const double a = evaluate(f, x);
            const double o = oracle_value(f.target, x, cfg);
            abs_err[i] = std::abs(a - o);
            rel_err[i] = std::abs(o) < rel_oracle_floor ? -1.0 : std::abs(a / o - 1.0);
        }
    };

    unsigned workers = threads ? threads : std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, 16u);
    if (workers > 1 && n > 10000) {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const std::int64_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::int64_t lo = std::min<std::int64_t>(w * chunk, n);
            const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n);
            pool.emplace_back([&, lo, hi, w] {
                try {
                    fill(lo, hi);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        fill(0, n);
    }

    ErrorReport rep;
    rep.grid = grid;
    rep.points = n;
    std::int64_t ia = 0, ir = -1;
    for (std::int64_t i = 0; i < n; ++i) {
        if (abs_err[i] > abs_err[ia]) ia = i;
        if (rel_err[i] >= 0.0 && (ir < 0 || rel_err[i] > rel_err[ir])) ir = i;
    }
    rep.max_abs = abs_err[ia];
    rep.argmax_abs = grid_point(grid, ia);
    rep.max_rel = ir < 0 ? 0.0 : rel_err[ir];
    rep.argmax_rel = ir < 0 ? grid.start : grid_point(grid, ir);
    const double floor = local_max_noise_frac * rep.max_abs;
    for (std::int64_t i = 1; i + 1 < n; ++i) {
        if (abs_err[i] > abs_err[i - 1] && abs_err[i] > abs_err[i + 1] && abs_err[i] >= floor)
            rep.local_maxima.push_back({grid_point(grid, i), abs_err[i]});
    }
    return rep;
}

// Bisects |approx(x) - oracle(x)| = |saturation - oracle(x)| to a bracket
// width of 1e-4. The difference of the two sides must change sign across
// the bracket.
inline double find_crossover(ApproxFunction f, double saturation,
                             std::pair<double, double> bracket,
                             const OracleConfig& cfg = {}) {
    validate(cfg);
    double lo = bracket.first, hi = bracket.second;
    if (!(lo < hi)) throw std::domain_error("find_crossover: bracket start must be below end");
    auto g = [&](double x) {
        const double o = oracle_value(f.target, x, cfg);
        return std::abs(evaluate(f, x) - o) - std::abs(saturation - o);
    };
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0))
        throw std::runtime_error("find_crossover: no sign change across the bracket");
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Largest b, located to 1e-4, such that |approx/oracle - 1| <= threshold
// everywhere on [0, b]. Relative error must be below the threshold at
// bracket.first and above it at bracket.second. Monotone growth is verified
// rather than assumed: the walk checks there is no crossing before the
// bracket and no dip back under the threshold after the first crossing.
inline double find_rel_threshold(ApproxFunction f, double threshold,
                                 std::pair<double, double> bracket,
                                 const OracleConfig& cfg = {}) {
    validate(cfg);
    const double lo = bracket.first, hi = bracket.second;
    if (!(0.0 < lo && lo < hi))
        throw std::domain_error("find_rel_threshold: bracket must satisfy 0 < start < end");
    auto rel = [&](double x) {
        const double o = oracle_value(f.target, x, cfg);
        if (std::abs(o) < rel_oracle_floor)
            throw std::runtime_error("find_rel_threshold: oracle vanishes inside the scan range");
        return std::abs(evaluate(f, x) / o - 1.0);
    };
    if (!(rel(lo) < threshold && rel(hi) > threshold))
        throw std::runtime_error("find_rel_threshold: bracket does not straddle the threshold");

    const double step = 1e-4;
    const auto prefix_cells = std::int64_t(std::ceil(lo / step));
    for (std::int64_t j = 1; j < prefix_cells; ++j) {
        const double x = lo * double(j) / double(prefix_cells);
        if (rel(x) > threshold)
            throw std::runtime_error("find_rel_threshold: threshold crossed before the bracket");
    }

    const auto cells = std::int64_t(std::ceil((hi - lo) / step));
    std::int64_t first_cross = -1;
    for (std::int64_t j = 1; j <= cells; ++j) {
        const double x = lo + (hi - lo) * double(j) / double(cells);
        const double r = rel(x);
        if (first_cross < 0) {
            if (r > threshold) first_cross = j;
        } else if (r <= threshold) {
            throw std::runtime_error(
                "find_rel_threshold: relative error dips back under the threshold past the crossing");
        }
    }
    const double left = lo + (hi - lo) * double(first_cross - 1) / double(cells);
    const double right = lo + (hi - lo) * double(first_cross) / double(cells);
    return 0.5 * (left + right);
}

struct TailCertificate {
    bool pass = false;
    double max_exponent = 0.0;     // largest E(x) seen; must stay below -12
    double max_complement = 0.0;   // largest 1 - erf_approx; must stay below e^-12
    double min_complement = 0.0;   // smallest 1 - erf_approx; must stay positive
    double max_abs_err = 0.0;      // largest |erf_approx - erf_ref|; must stay below 1e-5
    double max_oracle_tail = 0.0;  // largest erfc_ref; stays below 1e-7, closing the 1e-7 + e^-12 < 1e-5 chain
    std::int64_t samples = 0;
};

inline TailCertificate tail_certificate(double x_lo, double x_hi, std::int64_t n,
                                        const OracleConfig& cfg = {}) {
    validate(cfg);
    if (!(x_lo >= 4.0)) throw std::domain_error("tail_certificate: x_lo must be at least 4");
    if (!(x_hi > x_lo) || n < 2) throw std::domain_error("tail_certificate: bad sample range");
    TailCertificate cert;
    cert.samples = n;
    cert.max_exponent = -std::numeric_limits<double>::infinity();
    cert.min_complement = std::numeric_limits<double>::infinity();
    const auto coeffs = erf_coeffs<double>();
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * double(i) / double(n - 1);
        const double e = exponent(coeffs, x);
        // erfc_approx carries 1 - erf_approx in a form that cannot flush to
        // zero, so strict positivity is checked on the value actually shipped
        const double comp = erfc_approx(x);
        const double err = std::abs(erf_approx(x) - erf_ref(x, cfg));
        const double tail = erfc_ref(x, cfg);
        cert.max_exponent = std::max(cert.max_exponent, e);
        cert.max_complement = std::max(cert.max_complement, comp);
        cert.min_complement = std::min(cert.min_complement, comp);
        cert.max_abs_err = std::max(cert.max_abs_err, err);
        cert.max_oracle_tail = std::max(cert.max_oracle_tail, tail);
    }
    cert.pass = cert.max_exponent < -12.0 && cert.min_complement > 0.0 &&
                cert.max_complement < std::exp(-12.0) && cert.max_abs_err < 1e-5 &&
                cert.max_oracle_tail < 1e-7;
    return cert;
}

// 17 significant digits round-trip binary64 exactly
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// flat key=value lines, arrays as indexed keys; consumed by the CLI and
// trivially parseable back
inline std::string serialize(const ErrorReport& r) {
    std::string out;
    auto kv = [&out](const char* key, const std::string& val) {
        out += key;
        out += '=';
        out += val;
        out += '\n';
    };
    kv("max_abs", g17(r.max_abs));
    kv("argmax_abs", g17(r.argmax_abs));
    kv("max_rel", g17(r.max_rel));
    kv("argmax_rel", g17(r.argmax_rel));
    kv("points", std::to_string(r.points));
    kv("grid.start", g17(r.grid.start));
    kv("grid.end", g17(r.grid.end));
    kv("grid.count", std::to_string(r.grid.count));
    kv("grid.spacing", r.grid.spacing == Spacing::Uniform ? "uniform" : "log");
    kv("local_maxima.count", std::to_string(r.local_maxima.size()));
    for (std::size_t i = 0; i < r.local_maxima.size(); ++i) {
        const std::string base = "local_maxima." + std::to_string(i);
        kv((base + ".x").c_str(), g17(r.local_maxima[i].x));
        kv((base + ".abs_err").c_str(), g17(r.local_maxima[i].abs_err));
    }
    return out;
}

}  // namespace erfx
