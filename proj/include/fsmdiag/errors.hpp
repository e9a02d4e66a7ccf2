#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmdiag
{

// Bad arguments supplied by the caller (unknown state, malformed relation, ...).
class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed model text.
class parse_error : public std::runtime_error
{
    std::size_t _line;

public:
    parse_error( std::size_t line, const std::string& what )
            : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), _line{ line }
    {}

    [[nodiscard]] std::size_t line() const { return _line; }
};

// The model violates a standing assumption required by the operation.
class precondition_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An enumeration budget was exceeded.
class resource_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The observed output stream cannot be produced by the model.
class inconsistent_observation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace fsmdiag
