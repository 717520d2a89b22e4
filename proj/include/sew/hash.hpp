#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sew {

// 64-bit FNV-1a. Used for config fingerprints and golden-image hashes.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t state = kFnvOffset) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        state ^= bytes[i];
        state *= kFnvPrime;
    }
    return state;
}

inline std::uint64_t fnv1a64(std::string_view text, std::uint64_t state = kFnvOffset) {
    return fnv1a64(text.data(), text.size(), state);
}

inline std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes,
                             std::uint64_t state = kFnvOffset) {
    return fnv1a64(bytes.data(), bytes.size(), state);
}

std::string to_hex(std::uint64_t value);

} // namespace sew
