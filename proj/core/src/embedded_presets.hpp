#pragma once

#include <span>
#include <string_view>

namespace qeplas::detail {

struct EmbeddedPreset {
  std::string_view name;
  std::string_view text;
};

// Defined in a source file generated from presets/*.json at configure time.
std::span<const EmbeddedPreset> embedded_presets();

}  // namespace qeplas::detail
