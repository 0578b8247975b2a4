#pragma once

#include <stdexcept>
#include <string>

namespace finsum {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad JSON shape, unknown keys, missing fields.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Well-formed job rejected because a precondition of the evaluation
/// does not hold (boundary ties, integer kernel arguments, non-smooth f).
class GuardError : public Error {
public:
    GuardError(std::string guard, const std::string& what)
        : Error(guard + ": " + what), guard_(std::move(guard)) {}
    const std::string& guard() const { return guard_; }

private:
    std::string guard_;
};

/// Request exceeds a hard table or size limit.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Function evaluation left its numeric domain (log of a non-positive
/// value, division by zero, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Expression text failed to parse; position is a byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(what + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace finsum
