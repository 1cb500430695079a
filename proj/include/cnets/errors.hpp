#ifndef CNETS_ERRORS_HPP
#define CNETS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cnets {

/// Malformed input: unknown ids, menus outside the ground set, bad files.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured cap (ground-set size, subset enumeration) was exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition does not hold for the given arguments.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A guarantee the library relies on failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace cnets

#endif
