#include "riddle/error.hpp"

namespace riddle {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnitMismatch: return "unit_mismatch";
    case ErrorCode::QualitativeVariable: return "qualitative_variable";
    case ErrorCode::OutOfBand: return "out_of_band";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::InvalidMeasurement: return "invalid_measurement";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::EmptyAnswer: return "empty_answer";
    case ErrorCode::DuplicateTool: return "duplicate_tool";
    case ErrorCode::UnknownCategory: return "unknown_category";
    case ErrorCode::UnknownTool: return "unknown_tool";
    case ErrorCode::QualitativeNeedsMotivation: return "qualitative_needs_motivation";
    case ErrorCode::ScoreOutsideBand: return "score_outside_band";
    case ErrorCode::IncompleteAssessment: return "incomplete_assessment";
    case ErrorCode::NoCompleteAssessments: return "no_complete_assessments";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::IoFailure: return "io_failure";
    case ErrorCode::SerializationFailure: return "serialization_failure";
    case ErrorCode::SchemaVersionMismatch: return "schema_version_mismatch";
    case ErrorCode::CorruptDocument: return "corrupt_document";
    case ErrorCode::LockHeld: return "lock_held";
    case ErrorCode::ProjectNotFound: return "project_not_found";
    case ErrorCode::ProjectExists: return "project_exists";
    case ErrorCode::StaleRevision: return "stale_revision";
    case ErrorCode::MissingRevision: return "missing_revision";
    case ErrorCode::InvalidJson: return "invalid_json";
    case ErrorCode::NotFound: return "not_found";
    }
    return "internal";
}

int http_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnitMismatch:
    case ErrorCode::QualitativeVariable:
    case ErrorCode::OutOfBand:
    case ErrorCode::OutOfRange:
    case ErrorCode::InvalidMeasurement:
    case ErrorCode::UnknownVariable:
    case ErrorCode::EmptyAnswer:
    case ErrorCode::UnknownCategory:
    case ErrorCode::QualitativeNeedsMotivation:
    case ErrorCode::ScoreOutsideBand:
    case ErrorCode::IncompleteAssessment:
    case ErrorCode::NoCompleteAssessments:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingRevision:
    case ErrorCode::InvalidJson:
        return 400;
    case ErrorCode::UnknownTool:
    case ErrorCode::ProjectNotFound:
    case ErrorCode::NotFound:
        return 404;
    case ErrorCode::DuplicateTool:
    case ErrorCode::ProjectExists:
    case ErrorCode::StaleRevision:
    case ErrorCode::LockHeld:
        return 409;
    case ErrorCode::IoFailure:
    case ErrorCode::SerializationFailure:
    case ErrorCode::SchemaVersionMismatch:
    case ErrorCode::CorruptDocument:
        return 500;
    }
    return 500;
}

int exit_code(ErrorCode code) {
    return http_status(code) == 500 ? 1 : 2;
}

} // namespace riddle
