#pragma once

#include <stdexcept>
#include <string>

namespace sbridge {

// Failure taxonomy mirrored by the CLI exit codes:
//   config  -> exit 2 (invalid parameters or parameter combinations)
//   data    -> exit 3 (unreadable or malformed input)
//   numeric -> exit 4 (failure inside the numerical pipeline)
enum class ErrorKind { config, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// -- configuration ----------------------------------------------------------

struct InvalidM : Error {
    explicit InvalidM(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct KFeasibility : Error {
    explicit KFeasibility(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct InvalidRatio : Error {
    explicit InvalidRatio(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

// -- data -------------------------------------------------------------------

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

struct RaggedRows : Error {
    explicit RaggedRows(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

struct NonNumericCell : Error {
    explicit NonNumericCell(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

// -- numerics ---------------------------------------------------------------

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(ErrorKind::numeric, msg) {}
};

struct CoincidentCentroids : Error {
    explicit CoincidentCentroids(const std::string& msg) : Error(ErrorKind::numeric, msg) {}
};

struct IsolatedRegion : Error {
    explicit IsolatedRegion(const std::string& msg) : Error(ErrorKind::numeric, msg) {}
};

}  // namespace sbridge
