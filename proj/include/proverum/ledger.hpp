// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proverum/bytes.hpp"
#include "proverum/pki.hpp"

namespace proverum {

enum class Chaincode { CM, RP };

std::string_view to_string(Chaincode cc);
std::optional<Chaincode> chaincode_from_string(std::string_view token);

struct SignedTransaction {
    std::string submitter;  // authority name
    Chaincode chaincode = Chaincode::CM;
    std::string op;
    std::vector<std::string> args;
    std::uint64_t timestamp = 0;  // logical simulation tick
    Hash32 tx_id;                 // H(canonical payload)
    SignatureValue signature;     // submitter's transaction key over the payload

    Bytes canonical_payload() const;

    /// Builds, digests and signs a transaction in one step.
    static SignedTransaction make(const KeyPair& key, std::string submitter, Chaincode cc,
                                  std::string op, std::vector<std::string> args,
                                  std::uint64_t timestamp);
};

struct CommittedTx {
    SignedTransaction tx;
    bool valid = true;
    std::string validation_error;
};

struct Block {
    std::uint64_t height = 0;
    Hash32 prev_hash;  // zero for genesis
    std::vector<CommittedTx> txs;
    std::string orderer;
    Hash32 block_hash;  // H(canonical content incl. validity flags)
    SignatureValue orderer_signature;

    Bytes canonical_content() const;
};

// Recorded consensus thresholds. The simulator runs a deterministic
// round-robin ordering service; these numbers exist for scenario reporting
// and assertions, not for a live fault-tolerance protocol.
struct ConsensusPolicy {
    std::vector<std::string> ordering_members;  // sorted, government only

    std::size_t poa_conspiracy_threshold() const { return ordering_members.size() / 2 + 1; }
    std::size_t bft_fault_bound() const {
        return ordering_members.empty() ? 0 : (ordering_members.size() - 1) / 3;
    }
};

struct TxReceipt {
    Hash32 tx_id;
    bool accepted = false;
    std::string reason;
};

struct VerificationReport {
    bool ok = true;
    std::optional<std::uint64_t> first_bad_height;
    std::string detail;
};

using WorldState = std::map<std::string, std::string>;

struct ChaincodeResult {
    bool ok = true;
    std::string error;
};

/// Deterministic state-transition function run at commit time; must leave
/// `state` untouched when returning an error.
using ChaincodeHandler = std::function<ChaincodeResult(WorldState&, const SignedTransaction&)>;

struct Channel {
    std::string id;
    std::set<std::string> members;
    std::set<Chaincode> chaincodes;
    std::vector<Block> blocks;
    std::map<Chaincode, WorldState> world_states;
    std::vector<SignedTransaction> pending;
    std::vector<std::string> ordering_members;  // consortium members of this channel, sorted
};

// Append-only hash-chained block store per channel. Transactions are ordered
// deterministically by (timestamp, txId); chaincode validation runs at
// commit and failing transactions stay in the block flagged invalid, so the
// audit trail keeps the evidence.
class Ledger {
  public:
    Ledger(const Pki& pki, ConsensusPolicy policy);

    const ConsensusPolicy& policy() const { return policy_; }

    Channel& create_channel(const std::string& id, const std::set<std::string>& members,
                            const std::set<Chaincode>& chaincodes);

    TxReceipt submit(const std::string& channel_id, SignedTransaction tx);

    std::string scheduled_orderer(const std::string& channel_id) const;

    /// Cuts one block containing the whole pending pool; `caller` must be
    /// the scheduled round-robin orderer.
    const Block& cut_block(const std::string& channel_id, const std::string& caller);

    VerificationReport verify_chain(const std::string& channel_id) const;

    std::optional<std::string> query_state(const std::string& channel_id, Chaincode cc,
                                           const std::string& key,
                                           const std::string& caller) const;

    /// Read path for the public environment's partial-read grant; bypasses
    /// the membership check by design (exchange-interface surface).
    std::optional<std::string> query_state_granted(const std::string& channel_id, Chaincode cc,
                                                   const std::string& key) const;

    /// Recomputes all world states and validity flags from genesis and
    /// compares with the live channel.
    VerificationReport replay_check(const std::string& channel_id) const;

    void register_handler(Chaincode cc, ChaincodeHandler handler);

    const Channel& channel(const std::string& channel_id) const;
    Channel& channel_mut(const std::string& channel_id);
    bool has_channel(const std::string& channel_id) const;
    std::vector<std::string> channel_ids() const;  // creation order

    /// All bytes an orderer ever sees for this channel: every pending and
    /// committed transaction payload plus block content. Feeds the
    /// non-leakage sweep.
    Bytes orderer_visible_bytes(const std::string& channel_id) const;

  private:
    ChaincodeResult run_handler(Chaincode cc, WorldState& state,
                                const SignedTransaction& tx) const;
    VerificationReport verify_block(const Channel& ch, const Block& b, std::size_t index) const;

    const Pki& pki_;
    ConsensusPolicy policy_;
    std::map<std::string, Channel> channels_;
    std::vector<std::string> channel_order_;
    std::map<Chaincode, ChaincodeHandler> handlers_;
};

// --- canonical channel dumps -------------------------------------------------

Bytes serialize_block(const Block& b);
Block parse_block(ByteView data);

struct ChannelDump {
    std::string channel_id;
    std::vector<std::string> members;
    std::vector<Chaincode> chaincodes;
    std::vector<std::string> ordering_members;
    std::map<std::string, Certificate> roots;       // authority name -> root cert
    std::map<std::string, Certificate> leaf_certs;  // key id -> cert
    std::vector<Block> blocks;
};

struct BlockSpan {
    std::uint64_t height;
    std::size_t offset;  // into the dump buffer
    std::size_t length;
};

/// Canonical binary export of a channel, including every certificate a
/// memberless verifier needs. `spans` (optional) receives the byte range of
/// each serialized block inside the returned buffer.
Bytes dump_channel(const Channel& ch, const Pki& pki, std::vector<BlockSpan>* spans = nullptr);

ChannelDump parse_channel_dump(ByteView data);

/// Full chain verification using only the dump contents (hash links, orderer
/// rotation, certificate chains, transaction and block signatures).
VerificationReport verify_dump(const ChannelDump& dump);

/// One line per block: height, hash prefix, tx count, orderer.
std::string render_channel_text(const Channel& ch);

}  // namespace proverum
