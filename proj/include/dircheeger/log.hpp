#pragma once

#include <functional>
#include <string_view>

namespace dircheeger {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the process-wide warning sink. Passing an empty function silences
// warnings. The default sink writes to stderr.
void set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace dircheeger
