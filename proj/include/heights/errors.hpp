#pragma once

#include <stdexcept>
#include <string>

namespace heights {

// Malformed or inconsistent user input (bad JSON, rank deficiency where full
// rank is required, zero elements, ...).  CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A sign or comparison could not be decided below the configured precision
// ceiling.  CLI exit code 3.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A certificate check failed: an inequality that should hold did not certify.
// CLI exit code 4.
struct verify_error : std::runtime_error {
    explicit verify_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PrecisionContext {
    long bits = 256;      // working precision for transcendental evaluation
    long max_bits = 4096; // escalation ceiling; beyond this we give up

    PrecisionContext() = default;
    PrecisionContext(long b, long mb) : bits(b), max_bits(mb) {}
};

} // namespace heights
