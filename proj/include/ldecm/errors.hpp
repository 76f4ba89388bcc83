#pragma once

#include <stdexcept>
#include <string>

namespace ldecm {

// Exit-code categories surfaced by the CLI: config=2, data=3, solver=4, internal=5.
enum class ErrorCategory { config = 2, data = 3, solver = 4, internal = 5 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCategory::config, w) {}
};

struct DataError : Error {
    explicit DataError(const std::string& w) : Error(ErrorCategory::data, w) {}
};

struct SolverError : Error {
    explicit SolverError(const std::string& w) : Error(ErrorCategory::solver, w) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error(ErrorCategory::internal, w) {}
};

/// Parameter/config file carries an unsupported format version.
struct VersionMismatch : ConfigError {
    explicit VersionMismatch(const std::string& w) : ConfigError(w) {}
};

/// Axes of a serialized table do not match the expected names/order.
struct AxisMismatch : ConfigError {
    explicit AxisMismatch(const std::string& w) : ConfigError(w) {}
};

/// Requested power exceeds what the cell can deliver at this state.
struct NoBracket : SolverError {
    explicit NoBracket(const std::string& w) : SolverError(w) {}
};

/// Pulse record has no current-interrupt markers to extract resistance from.
struct NoInterrupts : DataError {
    explicit NoInterrupts(const std::string& w) : DataError(w) {}
};

/// Voltage trace has no convex-to-concave inflection.
struct NoInflection : DataError {
    explicit NoInflection(const std::string& w) : DataError(w) {}
};

/// Active regression columns are numerically collinear.
struct RankDeficient : SolverError {
    explicit RankDeficient(const std::string& w) : SolverError(w) {}
};

/// Objective became NaN/inf and the solver could not recover.
struct DivergedNonFinite : SolverError {
    explicit DivergedNonFinite(const std::string& w) : SolverError(w) {}
};

/// Profile spec demands power beyond the plant's feasible range.
struct InfeasibleSpec : ConfigError {
    explicit InfeasibleSpec(const std::string& w) : ConfigError(w) {}
};

}  // namespace ldecm
