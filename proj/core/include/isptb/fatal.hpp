#pragma once

#include <stdexcept>
#include <string>

namespace isptb {

// Unrecoverable testbench usage error (double bind, unmatched objection drop,
// transport on an unbound socket, ...). run_phases treats it as a test FAIL
// and skips everything except the report phase.
class FatalError : public std::runtime_error {
public:
    explicit FatalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace isptb
