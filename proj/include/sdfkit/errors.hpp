#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdfkit {

// File parsing failure. Carries the byte offset at which parsing stopped.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& msg, std::uint64_t byte_offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    std::uint64_t byte_offset() const { return byte_offset_; }

private:
    std::uint64_t byte_offset_;
};

// A transform was asked for a distance to an empty target set.
class EmptySetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A band query selected no cells.
class EmptyBandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values appeared mid-run. Carries the iteration index.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& msg, int iteration)
        : std::runtime_error(msg + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    int iteration() const { return iteration_; }

private:
    int iteration_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sdfkit
