#pragma once

#include <stdexcept>
#include <string>

namespace lhm {

// Invalid physical parameters (negative rates, zero dipole moment, ...).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A denominator hit a pole (vanishing response denominator, Clausius-Mossotti
// local-field catastrophe). Carries a description of the offending point.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The linear solve for a steady state is rank-deficient beyond the expected
// one-dimensional kernel.
class degenerate_state_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Config file problems: parse errors, unknown keys, violated invariants.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lhm
