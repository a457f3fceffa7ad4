#pragma once

#include <functional>
#include <string>

namespace heatrisk {

using WarningHandler = std::function<void(const std::string&)>;

/// Emit a non-fatal diagnostic (gap interpolation, degenerate split, ...).
/// Goes to stderr unless a handler is installed.
void emit_warning(const std::string& message);

/// Install a warning sink; pass nullptr to restore the stderr default.
/// Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace heatrisk
