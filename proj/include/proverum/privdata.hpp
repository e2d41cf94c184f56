// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "proverum/bytes.hpp"
#include "proverum/date.hpp"
#include "proverum/ledger.hpp"

namespace proverum {

/// Logical simulation time; advanced only by the scenario loop. `today` is
/// the simulated calendar date used by validity checks on citizen data.
struct Clock {
    std::uint64_t tick = 0;
    Date today{2026, 1, 1};
};

// Corpus of byte strings that must never appear on a shared channel or in
// the public environment: citizen PII plus every private value ever stored.
class SensitiveCorpus {
  public:
    void add(std::string value);
    const std::set<std::string>& values() const { return values_; }

    /// Needles found as byte substrings of `haystack`.
    std::vector<std::string> hits(ByteView haystack) const;

  private:
    std::set<std::string> values_;
};

struct PurgeReceipt {
    std::string key;
    Hash32 marker_tx_id;
};

struct PutReceipt {
    Hash32 value_digest;
    Hash32 tx_id;
};

// Private data collections: full values are replicated to authorized members
// only; the ordered transaction carries nothing but (key, value digest).
class PrivateData {
  public:
    PrivateData(const Pki& pki, Ledger& ledger, const Clock& clock, SensitiveCorpus& corpus);

    void create_collection(const std::string& collection_id,
                           const std::set<std::string>& authorized_members);

    /// Replicates `value` to every authorized member's store and submits the
    /// digest-only transaction to `channel`.
    PutReceipt put_private(const std::string& caller, const std::string& collection_id,
                           const std::string& key, Bytes value, const std::string& channel);

    /// True iff the caller's stored value hashes to the latest committed
    /// on-chain digest for the key.
    bool verify_private(const std::string& caller, const std::string& collection_id,
                        const std::string& key, const std::string& channel) const;

    PurgeReceipt purge_private(const std::string& caller, const std::string& collection_id,
                               const std::string& key, const std::string& channel);

    const Bytes* read(const std::string& caller, const std::string& collection_id,
                      const std::string& key) const;

    /// Keys present in one member's store, sorted.
    std::vector<std::string> keys(const std::string& caller,
                                  const std::string& collection_id) const;

    bool has_collection(const std::string& collection_id) const;

    /// Test/adversary hook: mutates stored bytes in one member's store
    /// without touching the chain (contract bypass).
    void tamper(const std::string& member, const std::string& collection_id,
                const std::string& key, std::size_t byte_index, std::uint8_t xor_mask);

    static std::string state_key(const std::string& collection_id, const std::string& key);

  private:
    struct Collection {
        std::set<std::string> authorized;
        // member -> key -> value
        std::map<std::string, std::map<std::string, Bytes>> stores;
    };

    Collection& authorized_collection(const std::string& caller, const std::string& collection_id);
    const Collection& authorized_collection(const std::string& caller,
                                            const std::string& collection_id) const;

    const Pki& pki_;
    Ledger& ledger_;
    const Clock& clock_;
    SensitiveCorpus& corpus_;
    std::map<std::string, Collection> collections_;
};

}  // namespace proverum
