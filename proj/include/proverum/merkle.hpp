// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "proverum/bytes.hpp"

namespace proverum {

// Binary Merkle tree over 32-byte leaves. A level with an odd node count is
// padded by duplicating its last node, so the audit path for n leaves always
// has ceil(log2(n)) elements. The empty tree has a fixed sentinel root.
namespace merkle {

struct PathElement {
    Hash32 sibling;
    bool sibling_on_left = false;
    auto operator<=>(const PathElement&) const = default;
};

using Path = std::vector<PathElement>;

Hash32 empty_root();

Hash32 root(const std::vector<Hash32>& leaves);

/// Audit path for `index`; requires index < leaves.size().
Path audit_path(const std::vector<Hash32>& leaves, std::size_t index);

/// Folds the path from `leaf` and compares against `expected_root`.
bool verify(const Hash32& leaf, const Path& path, const Hash32& expected_root);

}  // namespace merkle

}  // namespace proverum
