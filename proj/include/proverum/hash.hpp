// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "proverum/bytes.hpp"

namespace proverum {

Hash32 sha256(ByteView data);
Hash32 sha256(std::string_view data);

/// H(left || right) over raw 32-byte digests; the Merkle inner-node rule.
Hash32 sha256_pair(const Hash32& left, const Hash32& right);

/// Incremental SHA-256 for multi-part messages.
class Sha256 {
  public:
    Sha256();
    Sha256& update(ByteView data);
    Sha256& update(std::string_view data);
    Hash32 finish();

  private:
    // Mirrors crypto_hash_sha256_state without pulling sodium.h into headers.
    alignas(8) unsigned char state_[104];
};

}  // namespace proverum
