// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/hash.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace proverum {

static_assert(sizeof(crypto_hash_sha256_state) <= 104);

namespace {
void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("sodium_init failed");
}
}  // namespace

Hash32 sha256(ByteView data) {
    ensure_sodium();
    Hash32 out;
    crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
    return out;
}

Hash32 sha256(std::string_view data) { return sha256(as_view(data)); }

Hash32 sha256_pair(const Hash32& left, const Hash32& right) {
    std::array<std::uint8_t, 64> buf;
    std::memcpy(buf.data(), left.bytes.data(), 32);
    std::memcpy(buf.data() + 32, right.bytes.data(), 32);
    return sha256(ByteView{buf.data(), buf.size()});
}

Sha256::Sha256() {
    ensure_sodium();
    crypto_hash_sha256_init(reinterpret_cast<crypto_hash_sha256_state*>(state_));
}

Sha256& Sha256::update(ByteView data) {
    crypto_hash_sha256_update(reinterpret_cast<crypto_hash_sha256_state*>(state_), data.data(),
                              data.size());
    return *this;
}

Sha256& Sha256::update(std::string_view data) { return update(as_view(data)); }

Hash32 Sha256::finish() {
    Hash32 out;
    crypto_hash_sha256_final(reinterpret_cast<crypto_hash_sha256_state*>(state_), out.bytes.data());
    return out;
}

}  // namespace proverum
