#pragma once

#include <filesystem>
#include <string>

namespace metapeel {

/// Write a whole file through a temporary sibling and an atomic rename, so
/// interrupted runs never leave torn files.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// UTC timestamp `YYYYMMDD-HHMMSS` for run directory names.
std::string utc_timestamp();

} // namespace metapeel
