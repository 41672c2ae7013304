#pragma once

#include <stdexcept>
#include <string>

namespace ccb {

// Error taxonomy shared across the library. The CLI maps these onto exit
// codes: usage_error -> 1, hypothesis_error -> 2, inconclusive_error -> 3.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A value could not be decided at the working precision.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration or search exceeded its configured cap.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated hypothesis of the invoked estimate fails on the supplied data.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An identity that must hold by construction failed; never swallowed.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& msg) : std::logic_error(msg) {}
};

// A search hit a cap or a guard without reaching a definite answer.
struct inconclusive_error : std::runtime_error {
    explicit inconclusive_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ccb
