// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proverum/channel_map.hpp"
#include "proverum/ledger.hpp"
#include "proverum/privdata.hpp"

namespace proverum {

enum class PublicationKind {
    RegisterDigest,
    MerkleRoot,
    PreliminaryResult,
    FederalResult,
    BlacklistDigest,
};

std::string_view to_string(PublicationKind kind);
std::optional<PublicationKind> publication_kind_from_string(std::string_view token);

struct PublicationRecord {
    PublicationKind kind = PublicationKind::RegisterDigest;
    std::string payload;  // digest rendering or canonical result encoding; never PII
    std::string source_authority;
    SignatureValue source_signature;  // publication key over (kind, payload, source)
    std::string source_channel_tx_id;

    Bytes to_be_signed() const;
    std::string to_line() const;

    bool operator==(const PublicationRecord& other) const {
        return kind == other.kind && payload == other.payload &&
               source_authority == other.source_authority &&
               source_signature == other.source_signature &&
               source_channel_tx_id == other.source_channel_tx_id;
    }
};

struct PoABlock {
    std::uint64_t height = 0;
    Hash32 prev_hash;
    std::vector<PublicationRecord> records;
    std::string producer;
    Hash32 block_hash;
    SignatureValue producer_signature;

    Bytes canonical_content() const;
};

struct PublicationReceipt {
    bool ok = false;
    std::string external_tx_id;  // option 1 sink id, when enabled
};

// Everything the public can see, as plain data: snapshotting it severs all
// private-environment handles, so a verifier built from a PublicView can
// only use public information.
struct PublicView {
    std::set<int> options;
    std::vector<std::pair<std::string, PublicationRecord>> sink;  // option 1: (extern id, record)
    std::vector<PoABlock> poa_blocks;                             // option 2
    std::vector<std::string> poa_producers;                       // round-robin order
    std::vector<PublicationRecord> indexed;                       // option 3
    std::map<std::string, Certificate> publication_certs;         // authority -> cert
    // (municipality, event) -> public artifacts
    std::map<std::pair<std::string, std::string>, std::string> register_exports;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> reception_logs;
};

struct PublicCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct PublicVerificationReport {
    bool ok = true;
    std::vector<PublicCheck> checks;

    std::string summary() const;
};

// The public environment in all three designs: (1) a simulated public
// permissionless sink, (2) a public permissioned PoA chain readable by
// anyone, (3) a partial-read query surface. The exchange interface
// gatekeeps every publication for private data.
class PublicEnv {
  public:
    PublicEnv(const Pki& pki, const Ledger& ledger, const ChannelMap& channels,
              const SensitiveCorpus& corpus, std::set<int> options,
              std::vector<std::string> poa_producers);

    /// Gatekeeper + signature check, then fan-out to every enabled option.
    PublicationReceipt publish(const PublicationRecord& record);

    /// Builds, signs (with the source's publication key) and publishes.
    PublicationReceipt publish_from(const std::string& source, PublicationKind kind,
                                    std::string payload, std::string source_channel_tx_id);

    /// PoA block production: one block per simulation tick when records are
    /// pending; producers rotate round-robin.
    void tick();

    const std::set<int>& options() const { return options_; }
    const std::vector<std::pair<std::string, PublicationRecord>>& sink() const { return sink_; }
    const std::vector<PoABlock>& poa_blocks() const { return poa_blocks_; }
    const std::vector<PublicationRecord>& indexed() const { return indexed_; }

    /// Option 3 read surface; no membership needed.
    std::vector<PublicationRecord> read_records(PublicationKind kind) const;
    std::vector<PublicationRecord> read_all() const;

    /// Option 3 partial-read grant into the external channel: per-voter
    /// reception status by commitment (the QR-link check).
    std::optional<std::string> reception_status(const std::string& municipality,
                                                const std::string& event_id,
                                                const Hash32& commitment) const;

    /// Plain-data snapshot for a memberless verifier.
    PublicView snapshot() const;

    /// File export: one record per line.
    std::string export_records_text() const;

    /// Bytes visible to the public across all options; feeds the
    /// non-leakage sweep.
    Bytes public_bytes() const;

    /// Multiset equality of records across options 1 and 2, when both on.
    bool options_consistent() const;

  private:
    const Pki& pki_;
    const Ledger& ledger_;
    const ChannelMap& channels_;
    const SensitiveCorpus& corpus_;
    std::set<int> options_;
    std::vector<std::string> poa_producers_;

    std::vector<std::pair<std::string, PublicationRecord>> sink_;
    std::vector<PoABlock> poa_blocks_;
    std::vector<PublicationRecord> poa_pending_;
    std::vector<PublicationRecord> indexed_;
};

/// All checks a member of the public can run for one voting event using
/// only the PublicView: register digest recomputation, federal-vs-cantonal
/// sums, source signatures, PoA chain integrity.
PublicVerificationReport public_verify(const PublicView& view, const std::string& event_id);

/// Eligibility verifiability from public artifacts alone: every counted
/// envelope maps to exactly one register commitment and no commitment is
/// counted twice.
PublicCheck verify_eligibility_public(const std::string& register_export,
                                      const std::vector<std::string>& reception_log);

}  // namespace proverum
