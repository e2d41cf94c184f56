// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proverum/citizen_registry.hpp"
#include "proverum/merkle.hpp"
#include "proverum/rng.hpp"

namespace proverum {

class PublicEnv;  // publication hand-off, wired by the topology

enum class BlacklistReason {
    TheftBeforeDispatch,
    TheftVoterLetterbox,
    TheftMunicipalLetterbox,
    Reroute,
    Other,
};

std::string_view to_string(BlacklistReason reason);
std::optional<BlacklistReason> blacklist_reason_from_string(std::string_view token);

enum class RegisterStatus { Active, Superseded };

struct BlacklistEntry {
    Hash32 commitment;
    BlacklistReason reason = BlacklistReason::Other;
    std::uint32_t register_version = 0;
    Hash32 tx_id;
};

/// Membership proof against a published register root. Root-anchored only:
/// it carries no voter identity.
struct EligibilityProof {
    Hash32 commitment;
    merkle::Path path;
    Hash32 root;
    std::uint32_t register_version = 0;
};

// One published register state. `commitments` is the public part; the salt
// and voter reference behind each commitment live in the municipality's
// private collection.
struct ElectoralRegister {
    std::string event_id;
    std::string municipality;
    std::uint32_t version = 0;
    std::vector<Hash32> commitments;
    Hash32 list_digest;  // H(c0 || c1 || ... || c_{n-1})
    Hash32 merkle_root;
    RegisterStatus status = RegisterStatus::Active;
};

Hash32 register_list_digest(const std::vector<Hash32>& commitments);

/// Public export: one lowercase-hex commitment per line, then
/// LIST_DIGEST=<hex> and MERKLE_ROOT=<hex> footer lines.
std::string render_register_export(const ElectoralRegister& reg);

struct ParsedRegisterExport {
    std::vector<Hash32> commitments;
    Hash32 list_digest;
    Hash32 merkle_root;
};
ParsedRegisterExport parse_register_export(const std::string& text);

// Electoral half of the citizen management contract: salted voter
// commitments per voting event, register publication, membership proofs,
// blacklisting and re-issuance.
class ElectoralRegisterModule {
  public:
    ElectoralRegisterModule(std::uint64_t seed, const Pki& pki, Ledger& ledger,
                            PrivateData& privdata, CitizenRegistry& citizens, const Clock& clock,
                            const ChannelMap& channels);

    /// Optional publication hand-off; when set, register digests and
    /// blacklist digests are forwarded to the public environment.
    void attach_public_env(PublicEnv* env) { public_env_ = env; }

    const ElectoralRegister& generate_register(const std::string& municipality,
                                               const std::string& event_id,
                                               const Date& reference_date);

    EligibilityProof prove_eligibility(const std::string& municipality,
                                       const std::string& event_id,
                                       const std::string& local_person_id) const;

    static bool verify_eligibility_proof(const EligibilityProof& proof,
                                         const Hash32& on_chain_root);

    Hash32 blacklist(const std::string& municipality, const std::vector<Hash32>& commitments,
                     BlacklistReason reason);

    /// TE5 path: supersedes the whole active register with freshly salted
    /// commitments (new version) and blacklists every old commitment.
    const ElectoralRegister& reissue_all(const std::string& municipality,
                                         const std::string& event_id, BlacklistReason reason);

    /// TE7/TE8 path: appends one fresh-salt commitment for the voter and
    /// blacklists the old one; the active commitment count stays unchanged.
    Hash32 reissue_single(const std::string& municipality, const std::string& event_id,
                          const std::string& local_person_id, BlacklistReason reason);

    const ElectoralRegister* active(const std::string& municipality,
                                    const std::string& event_id) const;
    const ElectoralRegister* version(const std::string& municipality, const std::string& event_id,
                                     std::uint32_t version) const;

    std::vector<BlacklistEntry> blacklist_entries(const std::string& municipality,
                                                  const std::string& event_id) const;
    std::set<Hash32> blacklisted_commitments(const std::string& municipality,
                                             const std::string& event_id) const;

    /// Active register size minus blacklisted commitments: the electorate.
    std::int64_t active_size(const std::string& municipality, const std::string& event_id) const;

    std::string export_active(const std::string& municipality, const std::string& event_id) const;

    /// Commitment currently bound to a voter in the active register.
    std::optional<Hash32> commitment_of(const std::string& municipality,
                                        const std::string& event_id,
                                        const std::string& local_person_id) const;
    std::optional<std::string> voter_of(const std::string& municipality,
                                        const std::string& event_id,
                                        const Hash32& commitment) const;

    /// On-chain lookups (committed state on the external channel).
    std::optional<Hash32> on_chain_merkle_root(const std::string& municipality,
                                               const std::string& event_id) const;
    std::optional<Hash32> on_chain_list_digest(const std::string& municipality,
                                               const std::string& event_id) const;
    std::vector<Hash32> on_chain_commitments(const std::string& municipality,
                                             const std::string& event_id) const;

    /// One active, non-blacklisted commitment per eligible voter; returns
    /// violation descriptions.
    std::vector<std::string> one_active_commitment_violations(const std::string& municipality,
                                                              const std::string& event_id) const;

    /// (municipality, event) pairs with at least one generated version.
    std::vector<std::pair<std::string, std::string>> register_keys() const;

    static std::string state_key_active(const std::string& municipality,
                                        const std::string& event_id);
    static std::string state_key_version(const std::string& municipality,
                                         const std::string& event_id, std::uint32_t version);
    static std::string state_key_blacklist(const std::string& municipality,
                                           const std::string& event_id);

  private:
    struct VoterSlot {
        std::string local_person_id;
        Hash32 salt;
        Hash32 commitment;
    };
    struct RegisterState {
        ElectoralRegister reg;
        std::vector<VoterSlot> slots;  // parallel to reg.commitments
        Date reference_date;           // reused by bulk re-issuance
    };

    RegisterState& active_state(const std::string& municipality, const std::string& event_id);
    const RegisterState* find_active(const std::string& municipality,
                                     const std::string& event_id) const;
    Hash32 make_commitment(const Hash32& salt, const CitizenRecord& record) const;
    void publish_register(const RegisterState& st);
    void store_slot_private(const std::string& municipality, const RegisterState& st,
                            const VoterSlot& slot, std::size_t index);
    DeterministicRng salt_stream(const std::string& municipality, const std::string& event_id,
                                 std::uint32_t version) const;

    std::uint64_t seed_;
    const Pki& pki_;
    Ledger& ledger_;
    PrivateData& privdata_;
    CitizenRegistry& citizens_;
    const Clock& clock_;
    const ChannelMap& channels_;
    PublicEnv* public_env_ = nullptr;

    // (municipality, event) -> version -> state; latest version is Active.
    std::map<std::pair<std::string, std::string>, std::map<std::uint32_t, RegisterState>> regs_;
    std::map<std::pair<std::string, std::string>, std::vector<BlacklistEntry>> blacklists_;
};

}  // namespace proverum
