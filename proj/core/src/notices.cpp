#include "heatrisk/notices.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace heatrisk {

namespace {
std::mutex g_mutex;
WarningHandler g_handler;  // empty -> stderr
}  // namespace

void emit_warning(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (g_handler) {
    g_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto previous = std::move(g_handler);
  g_handler = std::move(handler);
  return previous;
}

}  // namespace heatrisk
