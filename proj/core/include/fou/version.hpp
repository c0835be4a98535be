#pragma once

#include <string_view>

namespace fou {

std::string_view version();
std::string_view git_revision();

}  // namespace fou
