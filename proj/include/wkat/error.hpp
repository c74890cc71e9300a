#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wkat {

// Root of every error raised by the library. Axiom failures are *not* errors:
// they are reported through VerificationReport / SuiteReport values.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad tables, unknown tokens, unspecified cells, files that
// do not follow their line format.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Parse failure with the byte offset of the offending character.
class ParseError : public StructuralError {
public:
    ParseError(const std::string& what, std::size_t position)
        : StructuralError(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Operands built over different semirings, alphabets, carriers or state sets.
class MismatchError : public Error {
public:
    using Error::Error;
};

// A configured size cap would be exceeded (atoms, guarded strings, states).
class ResourceError : public Error {
public:
    using Error::Error;
};

// Natural-order derivation requested for a non-idempotent addition.
class UnsupportedDerivation : public Error {
public:
    using Error::Error;
};

// The semiring fails a property an operation depends on (e.g. integrality).
class SemiringRequirementError : public Error {
public:
    using Error::Error;
};

// A loop that is mathematically guaranteed to stabilise did not.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace wkat
