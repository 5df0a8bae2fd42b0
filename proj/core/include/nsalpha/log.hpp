#pragma once

#include <string_view>

namespace nsalpha::log {

enum class Level { debug = 0, info = 1, warning = 2, error = 3, off = 4 };

void set_level(Level level);
Level level();

void debug(std::string_view message);
void info(std::string_view message);
void warning(std::string_view message);

}  // namespace nsalpha::log
