#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mellin {

/// Independent generator derived from a master seed, a fixed label and an
/// optional shard index. Same inputs always give the same stream.
std::mt19937_64 substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

}  // namespace mellin
