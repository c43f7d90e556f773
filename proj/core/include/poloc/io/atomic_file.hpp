#pragma once

#include <filesystem>
#include <span>
#include <string_view>

namespace poloc::io {

// Writes to `<path>.tmp.<pid>` then renames over `path`, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace poloc::io
