#pragma once

#include "riddle/assessment.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace riddle {

inline constexpr int kSchemaVersion = 1;

/// File name used when a project is addressed by its directory.
inline constexpr std::string_view kProjectFileName = "riddle.json";

inline constexpr std::string_view kMatrixCsvHeader = "Tool name,R,I,Dmg,Dis,L,E,C,Score,Total";

/// A directory resolves to `<dir>/riddle.json`; anything else is taken as the file itself.
std::filesystem::path resolve_project_file(const std::filesystem::path& path);

/// {"schema_version": 1, "project": {...}}
nlohmann::json project_document(const Project& project);

/// Strict reader: unknown fields raise SchemaVersionMismatch, missing or mistyped
/// fields raise CorruptDocument carrying the field path. Invariants are checked.
Project project_from_document(const nlohmann::json& doc);

/// Writes to a temporary file in the same directory, then renames over `path`.
void save_project(const Project& project, const std::filesystem::path& path);

Project load_project(const std::filesystem::path& path);

std::string matrix_csv(const Matrix& matrix);

/// Throws NoCompleteAssessments for a project with nothing to export.
void export_matrix_csv(const Project& project, const std::filesystem::path& path);

/// Writes `content` atomically (temp file + rename). Throws IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Exclusive advisory lock on `<project file>.lock`, held for the object's lifetime.
class ProjectLock {
public:
    /// Throws LockHeld if another writer holds the lock, IoFailure if the lock file cannot be opened.
    explicit ProjectLock(const std::filesystem::path& project_file);
    ~ProjectLock();

    ProjectLock(const ProjectLock&) = delete;
    ProjectLock& operator=(const ProjectLock&) = delete;
    ProjectLock(ProjectLock&& other) noexcept;
    ProjectLock& operator=(ProjectLock&& other) noexcept;

private:
    int fd_ = -1;
};

} // namespace riddle
