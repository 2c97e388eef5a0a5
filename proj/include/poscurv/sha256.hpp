// Minimal SHA-256 for fingerprinting canonical metric JSON.
#pragma once

#include <cstdint>
#include <string>

namespace poscurv {

// Lowercase hex digest of the given bytes.
std::string sha256_hex(const std::string& data);

}  // namespace poscurv
