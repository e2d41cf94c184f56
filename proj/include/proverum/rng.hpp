// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "proverum/bytes.hpp"

namespace proverum {

// Deterministic byte stream: key = H(seed || label), block i = H(key || i).
// Every module draws from its own labeled substream so adding a consumer
// never shifts another module's draws. No std:: distribution is used; the
// output is identical across platforms and standard-library versions.
class DeterministicRng {
  public:
    DeterministicRng(std::uint64_t seed, std::string_view label);

    void fill(std::uint8_t* out, std::size_t len);
    Hash32 bytes32();
    std::uint64_t next_u64();
    /// Uniform in [0, bound) via rejection sampling; bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound);

  private:
    void refill();

    Hash32 key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint8_t, 32> block_{};
    std::size_t block_pos_ = 32;  // force refill on first draw
};

}  // namespace proverum
