#pragma once

#include <stdexcept>
#include <string>

namespace sff {

// Malformed or unsupported file contents (PGM header, SFFD payload, CSV).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure: open, read, write, rename.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sff
