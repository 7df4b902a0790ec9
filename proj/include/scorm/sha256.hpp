#pragma once

// SHA-256 for provenance digests in run reports.

#include <cstdint>
#include <span>
#include <string>

namespace scorm {

std::string sha256_hex(std::span<const unsigned char> data);
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

} // namespace scorm
