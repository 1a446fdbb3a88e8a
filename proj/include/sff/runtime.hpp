#pragma once

namespace sff {

inline constexpr const char* kToolVersion = "0.1.0";

// Applies the SFF_THREADS cap to the OpenMP runtime; no-op when the variable
// is unset, empty, or not a positive integer. Call once at process start.
void configure_threads_from_env();

} // namespace sff
