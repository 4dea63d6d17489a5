#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace paircorr::zeros {

/// Validated, strictly increasing positive zero ordinates.
struct ZeroDataset {
    std::vector<double> ordinates;
    std::string source_label;
    double max_height = 0.0;
    /// Non-fatal observations (e.g. the file does not start at the first zero).
    std::vector<std::string> warnings;

    std::size_t size() const { return ordinates.size(); }
    /// #{gamma <= T}; ties with T are counted.
    std::size_t count_below(double T) const;
};

/// Builds a dataset from ordinates already in memory (validated the same way).
ZeroDataset make_dataset(std::vector<double> ordinates, std::string label);

/// One decimal ordinate per line; '#' comment lines and blank lines are
/// skipped; "\n" and "\r\n" line endings. Throws DataError with the line
/// number on parse errors, non-positive values, non-increasing values or an
/// empty file.
ZeroDataset parse_zeros(std::istream& in, std::string label);

/// As parse_zeros; a file that cannot be opened raises DataError carrying the
/// OS error text.
ZeroDataset load_zeros(const std::filesystem::path& path);

/// Deterministic stand-in ordinates: the solutions of
/// riemann_von_mangoldt(t) = n - 1/2 for n = 1..count. They have the right
/// density but none of the correlations of real zeros.
std::vector<double> synthetic_ordinates(std::size_t count);

/// Riemann-von Mangoldt main term (T/2pi) log(T/(2 pi e)) + 7/8.
double riemann_von_mangoldt(double T);

}  // namespace paircorr::zeros
