// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/rng.hpp"

#include "proverum/encoding.hpp"
#include "proverum/hash.hpp"

namespace proverum {

DeterministicRng::DeterministicRng(std::uint64_t seed, std::string_view label) {
    CanonicalWriter w;
    w.field_u64(seed);
    w.field(label);
    key_ = sha256(as_view(w.bytes()));
}

void DeterministicRng::refill() {
    CanonicalWriter w;
    w.field_hash(key_);
    w.field_u64(counter_++);
    block_ = sha256(as_view(w.bytes())).bytes;
    block_pos_ = 0;
}

void DeterministicRng::fill(std::uint8_t* out, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        if (block_pos_ == block_.size()) refill();
        out[i] = block_[block_pos_++];
    }
}

Hash32 DeterministicRng::bytes32() {
    Hash32 h;
    fill(h.bytes.data(), h.bytes.size());
    return h;
}

std::uint64_t DeterministicRng::next_u64() {
    std::uint8_t buf[8];
    fill(buf, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | buf[i];
    return v;
}

std::uint64_t DeterministicRng::uniform(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

}  // namespace proverum
