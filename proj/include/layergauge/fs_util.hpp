#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace layergauge {

// Whole-file read; throws IoError with the path in the message.
std::string readFileBytes(const std::filesystem::path& path);

// Write-then-rename so readers never observe a partial file.
void atomicWriteFile(const std::filesystem::path& path, std::string_view bytes);

// FNV-1a over raw bytes; used for content-hash cache keys.
std::uint64_t hashBytes(std::string_view bytes);
std::uint64_t hashFile(const std::filesystem::path& path);

std::string toHex(std::uint64_t value);

}  // namespace layergauge
