#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

// Domain/validation failures: bad input data, degree mismatches, malformed
// permutations, unsupported graph classes. CLI maps these to exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configured caps exceeded (term budget, enumeration caps). Exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A symbolic operation was asked for a scale that is not rational in exact mode.
struct mode_error : domain_error {
    explicit mode_error(const std::string& msg) : domain_error(msg) {}
};

// An averaging closed form was applied to an argument outside its shape.
struct shape_error : domain_error {
    explicit shape_error(const std::string& msg) : domain_error(msg) {}
};

} // namespace kgraph
