#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riddle {

enum class ErrorCode {
    // rubric_core
    UnitMismatch,
    QualitativeVariable,
    OutOfBand,
    OutOfRange,
    InvalidMeasurement,
    UnknownVariable,
    // assessment
    EmptyAnswer,
    DuplicateTool,
    UnknownCategory,
    UnknownTool,
    QualitativeNeedsMotivation,
    ScoreOutsideBand,
    IncompleteAssessment,
    NoCompleteAssessments,
    InvalidArgument,
    // store
    IoFailure,
    SerializationFailure,
    SchemaVersionMismatch,
    CorruptDocument,
    LockHeld,
    // service
    ProjectNotFound,
    ProjectExists,
    StaleRevision,
    MissingRevision,
    InvalidJson,
    NotFound,
};

/// Machine-readable snake_case name, e.g. "unit_mismatch".
std::string_view error_code_name(ErrorCode code);

/// 400 validation, 404 unknown ids, 409 conflicts, 500 otherwise.
int http_status(ErrorCode code);

/// CLI exit code: 2 for validation/usage/conflict errors, 1 for runtime failures.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string field_path = {})
        : std::runtime_error(message), code_(code), field_path_(std::move(field_path)) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const { return error_code_name(code_); }

    /// JSON-pointer-like location of the offending field, empty when not applicable.
    const std::string& field_path() const noexcept { return field_path_; }

private:
    ErrorCode code_;
    std::string field_path_;
};

} // namespace riddle
