// errors.hpp
// Exception types shared across the library. Argument and range problems
// use the standard exceptions; protocol-level failures get their own types
// so callers can distinguish a refused session from a tampered share.

#pragma once

#include <stdexcept>
#include <string>

namespace gbx {

// Thrown when a + b admits no Goldbach partition other than {a, b}.
// The session must be refused: reusing {a, b} would hand each party
// the other's secret.
class NoAlternativePartition : public std::runtime_error {
public:
    explicit NoAlternativePartition(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when a recovered session key fails its plausibility check
// (wrong secret, tampered share, or a corrupted frame).
class IntegrityFailure : public std::runtime_error {
public:
    explicit IntegrityFailure(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when a party id is not present in the CA registry.
class AuthenticationError : public std::runtime_error {
public:
    explicit AuthenticationError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown by the wire codec on truncated, oversized or otherwise
// inconsistent frames.
class CodecError : public std::runtime_error {
public:
    explicit CodecError(const std::string& what)
        : std::runtime_error(what) {}
};

// Transport-level failure (socket errors, peer sent ERROR frame).
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace gbx
