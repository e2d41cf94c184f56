// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/merkle.hpp"

#include <stdexcept>

#include "proverum/hash.hpp"

namespace proverum::merkle {

Hash32 empty_root() { return sha256("PROVERUM-EMPTY"); }

namespace {
std::vector<Hash32> next_level(std::vector<Hash32> level) {
    if (level.size() % 2 == 1) level.push_back(level.back());
    std::vector<Hash32> parents;
    parents.reserve(level.size() / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
        parents.push_back(sha256_pair(level[i], level[i + 1]));
    }
    return parents;
}
}  // namespace

Hash32 root(const std::vector<Hash32>& leaves) {
    if (leaves.empty()) return empty_root();
    std::vector<Hash32> level = leaves;
    while (level.size() > 1) level = next_level(std::move(level));
    return level[0];
}

Path audit_path(const std::vector<Hash32>& leaves, std::size_t index) {
    if (index >= leaves.size()) throw std::out_of_range("merkle leaf index");
    Path path;
    std::vector<Hash32> level = leaves;
    std::size_t pos = index;
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::size_t sibling = pos ^ 1;
        path.push_back(PathElement{level[sibling], sibling < pos});
        level = next_level(std::move(level));
        pos >>= 1;
    }
    return path;
}

bool verify(const Hash32& leaf, const Path& path, const Hash32& expected_root) {
    Hash32 acc = leaf;
    for (const PathElement& e : path) {
        acc = e.sibling_on_left ? sha256_pair(e.sibling, acc) : sha256_pair(acc, e.sibling);
    }
    return acc == expected_root;
}

}  // namespace proverum::merkle
