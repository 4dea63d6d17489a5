#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <fmt/format.h>

namespace paircorr::csv {

/// Fixed, locale-independent rendering: 15 significant digits, '.' separator.
inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) return "0";
    return fmt::format("{:.15g}", v);
}

inline std::string num(std::int64_t v) { return fmt::format("{}", v); }
inline std::string num(std::uint64_t v) { return fmt::format("{}", v); }

}  // namespace paircorr::csv
