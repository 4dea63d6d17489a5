#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paircorr {

/// Malformed input data. Carries the 1-based line number when the problem
/// is tied to a line of a text file (0 otherwise).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace paircorr
