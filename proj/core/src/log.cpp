#include "nsalpha/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

#include "nsalpha/errors.hpp"

namespace nsalpha {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration";
  for (const auto& p : problems) {
    out += "\n  - ";
    out += p;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

namespace log {

namespace {
std::atomic<Level> g_level{Level::warning};
std::mutex g_sink_mutex;

void emit(Level lvl, std::string_view tag, std::string_view message) {
  if (lvl < g_level.load(std::memory_order_relaxed)) return;
  std::lock_guard lock(g_sink_mutex);
  std::cerr << "[nsalpha:" << tag << "] " << message << '\n';
}
}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void debug(std::string_view message) { emit(Level::debug, "debug", message); }
void info(std::string_view message) { emit(Level::info, "info", message); }
void warning(std::string_view message) { emit(Level::warning, "warning", message); }

}  // namespace log
}  // namespace nsalpha
