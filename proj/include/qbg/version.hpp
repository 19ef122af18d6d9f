#pragma once

namespace qbg {

// Tool version stamped into JSON outputs so downstream consumers can detect
// format changes.
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace qbg
