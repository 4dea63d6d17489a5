#include "paircorr/zeros.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "paircorr/error.hpp"

namespace paircorr::zeros {

namespace {

constexpr double kFirstZero = 14.134725141734693790;

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

void add_sanity_warnings(ZeroDataset& ds) {
    const double first = ds.ordinates.front();
    if (std::abs(first - kFirstZero) > 1e-4) {
        ds.warnings.push_back(fmt::format(
            "first ordinate {} is not the first zeta zero; counts are relative to the file", first));
        return;
    }
    const double T = ds.max_height;
    if (T >= 1e3) {
        const double expected = riemann_von_mangoldt(T);
        const double rel = std::abs(double(ds.size()) - expected) / expected;
        if (rel > 0.01) {
            ds.warnings.push_back(fmt::format(
                "count {} differs from Riemann-von Mangoldt estimate {:.1f} by {:.2f}%", ds.size(),
                expected, 100 * rel));
        }
    }
}

void validate_next(const std::vector<double>& seen, double v, std::size_t line) {
    if (!std::isfinite(v) || v <= 0) throw DataError(fmt::format("ordinate {} is not positive", v), line);
    if (!seen.empty() && v <= seen.back()) {
        throw DataError(fmt::format("ordinates not strictly increasing ({} after {})", v, seen.back()), line);
    }
}

}  // namespace

std::size_t ZeroDataset::count_below(double T) const {
    return std::size_t(std::upper_bound(ordinates.begin(), ordinates.end(), T) - ordinates.begin());
}

double riemann_von_mangoldt(double T) {
    const double t = T / (2 * std::numbers::pi);
    return t * std::log(t / std::numbers::e) + 0.875;
}

std::vector<double> synthetic_ordinates(std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    double t = 20.0;
    for (std::size_t n = 1; n <= count; ++n) {
        const double target = double(n) - 0.5;
        for (int iter = 0; iter < 50; ++iter) {
            const double slope = std::log(t / (2 * std::numbers::pi)) / (2 * std::numbers::pi);
            const double step = (riemann_von_mangoldt(t) - target) / slope;
            t = std::max(t - step, 0.5 * (t + 1.2 * 2 * std::numbers::pi));  // stay where N is increasing
            if (std::abs(step) < 1e-13 * t) break;
        }
        out.push_back(t);
        t += 2 * std::numbers::pi / std::log(t / (2 * std::numbers::pi));
    }
    return out;
}

ZeroDataset make_dataset(std::vector<double> ordinates, std::string label) {
    if (ordinates.empty()) throw DataError("zero dataset is empty");
    std::vector<double> checked;
    checked.reserve(ordinates.size());
    for (std::size_t i = 0; i < ordinates.size(); ++i) {
        validate_next(checked, ordinates[i], i + 1);
        checked.push_back(ordinates[i]);
    }
    ZeroDataset ds;
    ds.ordinates = std::move(checked);
    ds.source_label = std::move(label);
    ds.max_height = ds.ordinates.back();
    add_sanity_warnings(ds);
    return ds;
}

ZeroDataset parse_zeros(std::istream& in, std::string label) {
    ZeroDataset ds;
    ds.source_label = std::move(label);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        double v = 0.0;
        const char* end = text.data() + text.size();
        const char* begin = text.data();
        if (*begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            throw DataError(fmt::format("cannot parse '{}' as a number", text), line);
        }
        validate_next(ds.ordinates, v, line);
        ds.ordinates.push_back(v);
    }
    if (ds.ordinates.empty()) throw DataError("zero file contains no ordinates");
    ds.max_height = ds.ordinates.back();
    add_sanity_warnings(ds);
    return ds;
}

ZeroDataset load_zeros(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open {}: {}", path.string(), std::strerror(errno)));
    return parse_zeros(in, path.string());
}

}  // namespace paircorr::zeros
