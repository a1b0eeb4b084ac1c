#pragma once

#include <stdexcept>
#include <string>

namespace ncrest {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division or inversion with a zero operand in GF(2^8).
struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("gf256: division by zero") {}
};

// Row/column arity does not match the matrix it is used with.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed wire data: coding header, response record or combination.
struct ProtocolError : Error {
    using Error::Error;
};

// Encoding requested over an empty coding window.
struct EmptyWindowError : Error {
    EmptyWindowError() : Error("rlnc: cannot encode over an empty window") {}
};

// Parameter outside its mathematical domain (e.g. loss probability >= 1).
struct DomainError : Error {
    using Error::Error;
};

// Socket-level failure on the HTTP channel, distinct from protocol errors.
struct TransportError : Error {
    using Error::Error;
};

// A run exceeded its virtual-time ceiling without completing.
struct RunAbortedError : Error {
    using Error::Error;
};

}  // namespace ncrest
