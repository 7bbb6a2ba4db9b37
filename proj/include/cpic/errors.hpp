#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input or a picture the library rejects on mathematical grounds.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Residue characteristic divides the inertia order.
class WildError : public InputError {
public:
    using InputError::InputError;
};

// No cyclic action satisfies the orbit/orphan/stabilizer conditions.
class NotPolynomialType : public InputError {
public:
    using InputError::InputError;
};

// An internal consistency check failed: a bug or a formula used outside its range.
class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace cpic
