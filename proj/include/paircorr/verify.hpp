#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paircorr/singular_series.hpp"
#include "paircorr/zeros.hpp"

namespace paircorr::verify {

enum class Suite { arithmetic, singular, smoothing, oscillatory, paircorr, formulas, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite s);

struct Check {
    std::string name;
    double observed;
    double bound;
    bool pass;
};

/// Inputs shared by the suites. `constants` is used as given, so a corrupted
/// value (say a wrong A) makes the dependent checks fail.
struct Context {
    singular::Constants constants;
    std::uint32_t sieve_limit = 10'000'000;
    std::uint32_t hmax = 1'000'000;
    /// Real zeros if available; the paircorr suite falls back to synthetic
    /// ordinates and skips the checks that need real data.
    std::optional<zeros::ZeroDataset> zeros;

    /// Constants derived from the corrected Euler product over primes <= sieve_limit.
    static Context standard(std::uint32_t sieve_limit = 10'000'000, std::uint32_t hmax = 1'000'000);
};

/// Runs one suite (or all of them in order); every check yields one entry.
std::vector<Check> run(Suite suite, const Context& ctx);

/// `PASS|FAIL,check_name,observed,bound`
std::string format(const Check& c);

}  // namespace paircorr::verify
