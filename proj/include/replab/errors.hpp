#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace replab {

// Base class for every error this library throws on purpose.  Callers that
// want an exit-code contract (the CLI) can catch this one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PartitionTooLong : Error {
    explicit PartitionTooLong(const std::string& msg) : Error(msg) {}
};

struct GroupMismatch : Error {
    explicit GroupMismatch(const std::string& msg) : Error(msg) {}
};

struct NonGenuineCharacter : Error {
    explicit NonGenuineCharacter(const std::string& msg) : Error(msg) {}
};

struct NotARepresentation : Error {
    explicit NotARepresentation(const std::string& msg) : Error(msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

struct NotSymplecticSet : Error {
    explicit NotSymplecticSet(const std::string& msg) : Error(msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg) : Error(msg) {}
};

struct GenusTooSmall : Error {
    explicit GenusTooSmall(const std::string& msg) : Error(msg) {}
};

struct TableMismatch : Error {
    explicit TableMismatch(const std::string& msg) : Error(msg) {}
};

// 64-bit arithmetic that would wrap raises this instead of returning a wrong
// value; every computation is either exact or an explicit failure.
struct ArithmeticOverflow : Error {
    explicit ArithmeticOverflow(const std::string& msg) : Error(msg) {}
};

struct SyntaxError : Error {
    size_t offset;
    std::vector<std::string> expected;
    SyntaxError(size_t off, std::vector<std::string> exp, const std::string& msg)
        : Error(msg), offset(off), expected(std::move(exp)) {}
};

}  // namespace replab
