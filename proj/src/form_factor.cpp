#include "paircorr/form_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paircorr/oscillatory.hpp"
#include "paircorr/parallel.hpp"
#include "paircorr/summation.hpp"

namespace paircorr::pc {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::size_t kRowsPerChunk = 512;
constexpr std::size_t kPanelsPerChunk = 32;

std::size_t checked_count(const zeros::ZeroDataset& zs, double T) {
    if (!(T > 0)) throw std::domain_error("T must be positive");
    if (T > zs.max_height) {
        throw std::out_of_range("T = " + std::to_string(T) + " exceeds dataset height " +
                                std::to_string(zs.max_height));
    }
    return zs.count_below(T);
}

double density_log(double T) { return std::max(std::log(T / kTwoPi), 1.0); }

struct ChunkSum {
    CompensatedSum<double> value;
    std::uint64_t pairs = 0;
};

}  // namespace

std::string_view method_name(Method m) { return m == Method::direct ? "direct" : "integral"; }

double default_gap_cutoff(double T) { return 4000.0 * density_log(T) / std::numbers::pi; }

PairCorrelationEstimate f_direct_log(const zeros::ZeroDataset& zs, double L, double T,
                                     const DirectOptions& opts) {
    const std::size_t n = checked_count(zs, T);
    PairCorrelationEstimate est;
    est.method = Method::direct;
    if (n == 0) return est;
    const double* g = zs.ordinates.data();

    std::vector<double> c(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double phase = (long double)g[i] * (long double)L;
        c[i] = double(std::cos(phase));
        s[i] = double(std::sin(phase));
    }

    const double span = g[n - 1] - g[0];
    double cutoff = std::numeric_limits<double>::infinity();
    if (!opts.exact) cutoff = opts.gap_cutoff > 0 ? opts.gap_cutoff : default_gap_cutoff(T);
    const bool truncated = cutoff < span;

    const std::size_t chunks = (n + kRowsPerChunk - 1) / kRowsPerChunk;
    auto parts = parallel::map_chunks<ChunkSum>(chunks, [&](std::size_t chunk) {
        ChunkSum out;
        const std::size_t lo = chunk * kRowsPerChunk;
        const std::size_t hi = std::min(n, lo + kRowsPerChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const double gi = g[i];
            const std::size_t end =
                truncated ? std::size_t(std::upper_bound(g + i + 1, g + n, gi + cutoff) - g) : n;
            double a = 0.0, b = 0.0;
            for (std::size_t j = i + 1; j < end; ++j) {
                const double d = g[j] - gi;
                const double w = 4.0 / (4.0 + d * d);
                a += w * c[j];
                b += w * s[j];
            }
            out.value += c[i] * a + s[i] * b;
            out.pairs += end - i - 1;
        }
        return out;
    });

    CompensatedSum<double> total;
    for (const auto& p : parts) {
        total += p.value;
        est.pair_count_used += p.pairs;
    }
    est.value = double(n) + 2.0 * total.value();
    if (truncated) est.truncation_error_bound = double(n) * (4.0 / std::numbers::pi) * density_log(T) / cutoff;
    return est;
}

PairCorrelationEstimate f_direct(const zeros::ZeroDataset& zs, double x, double T,
                                 const DirectOptions& opts) {
    if (!(x > 1)) throw std::domain_error("f_direct: x must exceed 1");
    return f_direct_log(zs, std::log(x), T, opts);
}

PairCorrelationEstimate f_integral(const zeros::ZeroDataset& zs, double x, double T,
                                   const IntegralOptions& opts) {
    if (!(x > 1)) throw std::domain_error("f_integral: x must exceed 1");
    if (!(opts.abs_tol > 0)) throw std::invalid_argument("f_integral: abs_tol must be positive");
    const std::size_t n = checked_count(zs, T);
    PairCorrelationEstimate est;
    est.method = Method::integral;
    if (n == 0) return est;
    const double* g = zs.ordinates.data();
    const double L = std::log(x);
    const double nd = double(n);
    const double t_max = 0.5 * std::log(nd * nd / opts.abs_tol);

    // |S|^2 oscillates with frequencies up to the ordinate span; one period per panel.
    const double span = g[n - 1] - g[0];
    double width = span > 0 ? std::min(0.5, kTwoPi / span) : 0.5;

    auto integrand = [&](double t) {
        const double theta = L - t;
        CompensatedSum<double> re, im;
        for (std::size_t i = 0; i < n; ++i) {
            const double ph = g[i] * theta;
            re += std::cos(ph);
            im += std::sin(ph);
        }
        const double r = re.value(), q = im.value();
        return std::exp(-2.0 * std::abs(t)) * (r * r + q * q);
    };

    for (int attempt = 0;; ++attempt) {
        const std::size_t per_side = std::size_t(std::ceil(t_max / width));
        const double h = t_max / double(per_side);
        const std::size_t panels = 2 * per_side;
        const std::size_t chunks = (panels + kPanelsPerChunk - 1) / kPanelsPerChunk;
        struct Part {
            CompensatedSum<double> value;
            double error = 0.0;
        };
        auto parts = parallel::map_chunks<Part>(chunks, [&](std::size_t chunk) {
            Part out;
            const std::size_t lo = chunk * kPanelsPerChunk;
            const std::size_t hi = std::min(panels, lo + kPanelsPerChunk);
            for (std::size_t p = lo; p < hi; ++p) {
                // left side [-t_max, 0], right side [0, t_max]; the kink at 0 is a panel edge
                const double a = p < per_side ? -t_max + double(p) * h : double(p - per_side) * h;
                const double b = p + 1 == per_side ? 0.0
                                 : p + 1 == panels ? t_max
                                 : p < per_side    ? -t_max + double(p + 1) * h
                                                   : double(p + 1 - per_side) * h;
                const auto r = osc::gauss_kronrod21(integrand, a, b);
                out.value += r.value;
                out.error += r.error;
            }
            return out;
        });
        CompensatedSum<double> total;
        double error = 0.0;
        for (const auto& p : parts) {
            total += p.value;
            error += p.error;
        }
        if (error <= opts.abs_tol || attempt == 3) {
            est.value = total.value();
            est.truncation_error_bound = opts.abs_tol + error;
            est.pair_count_used = std::uint64_t(n) * (n - 1) / 2;
            return est;
        }
        width *= 0.5;
    }
}

std::uint64_t weak_pair_count(const zeros::ZeroDataset& zs, double T, double alpha) {
    if (alpha < 0) throw std::domain_error("weak_pair_count: alpha must be nonnegative");
    const std::size_t n = checked_count(zs, T);
    if (!(T > 1)) throw std::domain_error("weak_pair_count: T must exceed 1");
    const double delta = kTwoPi * alpha / std::log(T);
    const double* g = zs.ordinates.data();
    std::uint64_t count = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < i + 1) j = i + 1;
        while (j < n && g[j] - g[i] <= delta) ++j;
        count += j - i - 1;
    }
    return count;
}

}  // namespace paircorr::pc
