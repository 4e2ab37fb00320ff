#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmpf {

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Lowercase or uppercase hex; whitespace is skipped. nullopt on odd length
/// or a non-hex character.
std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text);

}  // namespace rmpf
