#pragma once

#include <json.hpp>

namespace coprime {

using ordered_json = nlohmann::ordered_json;

/// Two-space indented rendering shared by every emitted artifact.
inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace coprime
