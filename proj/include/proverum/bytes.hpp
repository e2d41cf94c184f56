// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proverum {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// 32-byte digest value used for every hash in the repository.
struct Hash32 {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const Hash32&) const = default;

    static Hash32 zero() { return Hash32{}; }
};

std::string to_hex(ByteView data);
std::string to_hex(const Hash32& h);

/// Strict lowercase hex decoding; rejects odd length and non-[0-9a-f] input.
std::optional<Bytes> from_hex(std::string_view hex);
std::optional<Hash32> hash_from_hex(std::string_view hex);

inline ByteView as_view(const Hash32& h) { return ByteView{h.bytes.data(), h.bytes.size()}; }
inline ByteView as_view(const Bytes& b) { return ByteView{b.data(), b.size()}; }
inline ByteView as_view(std::string_view s) {
    return ByteView{reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// True iff `needle` occurs as a contiguous byte substring of `haystack`.
bool contains_bytes(ByteView haystack, ByteView needle);

}  // namespace proverum
