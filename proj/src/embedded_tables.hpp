#pragma once

#include <string_view>

namespace coprime::detail {

extern const std::string_view kEmbeddedTableK3;
extern const std::string_view kEmbeddedTableK4;

}  // namespace coprime::detail
