// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/electoral_register.hpp"

#include <algorithm>

#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"
#include "proverum/hash.hpp"
#include "proverum/public_env.hpp"
#include "proverum/strings.hpp"

namespace proverum {

std::string_view to_string(BlacklistReason reason) {
    switch (reason) {
        case BlacklistReason::TheftBeforeDispatch: return "theft-before-dispatch";
        case BlacklistReason::TheftVoterLetterbox: return "theft-voter-letterbox";
        case BlacklistReason::TheftMunicipalLetterbox: return "theft-municipal-letterbox";
        case BlacklistReason::Reroute: return "reroute";
        case BlacklistReason::Other: return "other";
    }
    return "?";
}

std::optional<BlacklistReason> blacklist_reason_from_string(std::string_view token) {
    if (token == "theft-before-dispatch") return BlacklistReason::TheftBeforeDispatch;
    if (token == "theft-voter-letterbox") return BlacklistReason::TheftVoterLetterbox;
    if (token == "theft-municipal-letterbox") return BlacklistReason::TheftMunicipalLetterbox;
    if (token == "reroute") return BlacklistReason::Reroute;
    if (token == "other") return BlacklistReason::Other;
    return std::nullopt;
}

Hash32 register_list_digest(const std::vector<Hash32>& commitments) {
    Sha256 h;
    for (const Hash32& c : commitments) h.update(as_view(c));
    return h.finish();
}

std::string render_register_export(const ElectoralRegister& reg) {
    std::string out;
    for (const Hash32& c : reg.commitments) {
        out += to_hex(c);
        out += '\n';
    }
    out += "LIST_DIGEST=" + to_hex(reg.list_digest) + "\n";
    out += "MERKLE_ROOT=" + to_hex(reg.merkle_root) + "\n";
    return out;
}

ParsedRegisterExport parse_register_export(const std::string& text) {
    ParsedRegisterExport parsed;
    bool have_digest = false;
    bool have_root = false;
    for (const std::string& raw : split(text, '\n')) {
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.starts_with("LIST_DIGEST=")) {
            auto h = hash_from_hex(line.substr(12));
            if (!h) throw Error(Errc::ParseError, "bad LIST_DIGEST line");
            parsed.list_digest = *h;
            have_digest = true;
        } else if (line.starts_with("MERKLE_ROOT=")) {
            auto h = hash_from_hex(line.substr(12));
            if (!h) throw Error(Errc::ParseError, "bad MERKLE_ROOT line");
            parsed.merkle_root = *h;
            have_root = true;
        } else {
            auto h = hash_from_hex(line);
            if (!h) throw Error(Errc::ParseError, "bad commitment line in register export");
            parsed.commitments.push_back(*h);
        }
    }
    if (!have_digest || !have_root) {
        throw Error(Errc::ParseError, "register export missing footer lines");
    }
    return parsed;
}

ElectoralRegisterModule::ElectoralRegisterModule(std::uint64_t seed, const Pki& pki,
                                                 Ledger& ledger, PrivateData& privdata,
                                                 CitizenRegistry& citizens, const Clock& clock,
                                                 const ChannelMap& channels)
    : seed_(seed),
      pki_(pki),
      ledger_(ledger),
      privdata_(privdata),
      citizens_(citizens),
      clock_(clock),
      channels_(channels) {}

std::string ElectoralRegisterModule::state_key_active(const std::string& municipality,
                                                      const std::string& event_id) {
    return "er/" + municipality + "/" + event_id + "/active";
}

std::string ElectoralRegisterModule::state_key_version(const std::string& municipality,
                                                       const std::string& event_id,
                                                       std::uint32_t version) {
    return "er/" + municipality + "/" + event_id + "/v" + std::to_string(version);
}

std::string ElectoralRegisterModule::state_key_blacklist(const std::string& municipality,
                                                         const std::string& event_id) {
    return "bl/" + municipality + "/" + event_id;
}

DeterministicRng ElectoralRegisterModule::salt_stream(const std::string& municipality,
                                                      const std::string& event_id,
                                                      std::uint32_t version) const {
    return DeterministicRng(seed_, "salt/" + municipality + "/" + event_id + "/v" +
                                       std::to_string(version));
}

Hash32 ElectoralRegisterModule::make_commitment(const Hash32& salt,
                                                const CitizenRecord& record) const {
    Bytes identity = record.canonical_identity();
    Bytes buf;
    buf.reserve(32 + identity.size());
    buf.insert(buf.end(), salt.bytes.begin(), salt.bytes.end());
    buf.insert(buf.end(), identity.begin(), identity.end());
    return sha256(as_view(buf));
}

void ElectoralRegisterModule::store_slot_private(const std::string& municipality,
                                                 const RegisterState& st, const VoterSlot& slot,
                                                 std::size_t index) {
    CanonicalWriter w;
    w.field(slot.local_person_id);
    w.field_hash(slot.salt);
    w.field_u64(st.reg.version);
    w.field_u64(index);
    std::string key = "er/" + st.reg.event_id + "/v" + std::to_string(st.reg.version) + "/slot" +
                      std::to_string(index);
    privdata_.put_private(municipality, CitizenRegistry::collection_id(municipality), key,
                          w.take(), channels_.external);
}

void ElectoralRegisterModule::publish_register(const RegisterState& st) {
    const ElectoralRegister& reg = st.reg;
    std::vector<std::string> args{reg.municipality,
                                  reg.event_id,
                                  std::to_string(reg.version),
                                  to_hex(reg.list_digest),
                                  to_hex(reg.merkle_root),
                                  std::to_string(reg.commitments.size())};
    for (const Hash32& c : reg.commitments) args.push_back(to_hex(c));
    SignedTransaction tx =
        SignedTransaction::make(pki_.transaction_key(reg.municipality), reg.municipality,
                                Chaincode::CM, "er_publish", std::move(args), clock_.tick);
    TxReceipt receipt = ledger_.submit(channels_.external, std::move(tx));
    if (!receipt.accepted) {
        throw Error(Errc::NotAMember, "register publication rejected: " + receipt.reason);
    }
    if (public_env_) {
        public_env_->publish_from(reg.municipality, PublicationKind::RegisterDigest,
                                  reg.municipality + "/" + reg.event_id + "/v" +
                                      std::to_string(reg.version) + "=" + to_hex(reg.list_digest),
                                  to_hex(receipt.tx_id));
        public_env_->publish_from(reg.municipality, PublicationKind::MerkleRoot,
                                  reg.municipality + "/" + reg.event_id + "/v" +
                                      std::to_string(reg.version) + "=" + to_hex(reg.merkle_root),
                                  to_hex(receipt.tx_id));
    }
}

const ElectoralRegister& ElectoralRegisterModule::generate_register(
    const std::string& municipality, const std::string& event_id, const Date& reference_date) {
    auto key = std::make_pair(municipality, event_id);
    auto& versions = regs_[key];
    std::uint32_t version = versions.empty() ? 1 : versions.rbegin()->first + 1;
    if (!versions.empty()) {
        versions.rbegin()->second.reg.status = RegisterStatus::Superseded;
    }

    std::vector<EligibleVoter> eligible = citizens_.derive_eligible(municipality, reference_date);

    RegisterState st;
    st.reg.event_id = event_id;
    st.reg.municipality = municipality;
    st.reg.version = version;
    st.reg.status = RegisterStatus::Active;
    st.reference_date = reference_date;

    DeterministicRng salts = salt_stream(municipality, event_id, version);
    for (const EligibleVoter& v : eligible) {
        VoterSlot slot;
        slot.local_person_id = v.record.local_person_id;
        slot.salt = salts.bytes32();
        slot.commitment = make_commitment(slot.salt, v.record);
        st.reg.commitments.push_back(slot.commitment);
        st.slots.push_back(std::move(slot));
    }
    st.reg.list_digest = register_list_digest(st.reg.commitments);
    st.reg.merkle_root = merkle::root(st.reg.commitments);

    for (std::size_t i = 0; i < st.slots.size(); ++i) {
        store_slot_private(municipality, st, st.slots[i], i);
    }
    publish_register(st);

    auto [it, _] = versions.emplace(version, std::move(st));
    return it->second.reg;
}

ElectoralRegisterModule::RegisterState& ElectoralRegisterModule::active_state(
    const std::string& municipality, const std::string& event_id) {
    auto it = regs_.find(std::make_pair(municipality, event_id));
    if (it == regs_.end() || it->second.empty()) {
        throw Error(Errc::UnknownRegister, municipality + "/" + event_id);
    }
    return it->second.rbegin()->second;
}

const ElectoralRegisterModule::RegisterState* ElectoralRegisterModule::find_active(
    const std::string& municipality, const std::string& event_id) const {
    auto it = regs_.find(std::make_pair(municipality, event_id));
    if (it == regs_.end() || it->second.empty()) return nullptr;
    return &it->second.rbegin()->second;
}

const ElectoralRegister* ElectoralRegisterModule::active(const std::string& municipality,
                                                         const std::string& event_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    return st ? &st->reg : nullptr;
}

const ElectoralRegister* ElectoralRegisterModule::version(const std::string& municipality,
                                                          const std::string& event_id,
                                                          std::uint32_t version) const {
    auto it = regs_.find(std::make_pair(municipality, event_id));
    if (it == regs_.end()) return nullptr;
    auto vit = it->second.find(version);
    return vit == it->second.end() ? nullptr : &vit->second.reg;
}

EligibilityProof ElectoralRegisterModule::prove_eligibility(
    const std::string& municipality, const std::string& event_id,
    const std::string& local_person_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) throw Error(Errc::UnknownRegister, municipality + "/" + event_id);
    std::set<Hash32> blocked = blacklisted_commitments(municipality, event_id);
    // Latest non-blacklisted slot for the voter.
    for (std::size_t i = st->slots.size(); i-- > 0;) {
        const VoterSlot& slot = st->slots[i];
        if (slot.local_person_id != local_person_id) continue;
        if (blocked.contains(slot.commitment)) continue;
        EligibilityProof proof;
        proof.commitment = slot.commitment;
        proof.path = merkle::audit_path(st->reg.commitments, i);
        proof.root = st->reg.merkle_root;
        proof.register_version = st->reg.version;
        return proof;
    }
    throw Error(Errc::NotInRegister, local_person_id);
}

bool ElectoralRegisterModule::verify_eligibility_proof(const EligibilityProof& proof,
                                                       const Hash32& on_chain_root) {
    return merkle::verify(proof.commitment, proof.path, on_chain_root);
}

Hash32 ElectoralRegisterModule::blacklist(const std::string& municipality,
                                          const std::vector<Hash32>& commitments,
                                          BlacklistReason reason) {
    if (commitments.empty()) throw Error(Errc::UnknownCommitment, "empty commitment set");
    // Commitments must belong to a register (any version) of this municipality.
    std::string event_id;
    std::uint32_t version = 0;
    for (const Hash32& c : commitments) {
        bool found = false;
        for (const auto& [key, versions] : regs_) {
            if (key.first != municipality) continue;
            for (const auto& [v, st] : versions) {
                if (std::find(st.reg.commitments.begin(), st.reg.commitments.end(), c) !=
                    st.reg.commitments.end()) {
                    event_id = key.second;
                    version = v;
                    found = true;
                }
            }
        }
        if (!found) throw Error(Errc::UnknownCommitment, to_hex(c));
    }

    std::vector<std::string> args{municipality, event_id, std::to_string(version),
                                  std::string(to_string(reason)),
                                  std::to_string(commitments.size())};
    for (const Hash32& c : commitments) args.push_back(to_hex(c));
    SignedTransaction tx =
        SignedTransaction::make(pki_.transaction_key(municipality), municipality, Chaincode::CM,
                                "er_blacklist", std::move(args), clock_.tick);
    TxReceipt receipt = ledger_.submit(channels_.external, std::move(tx));
    if (!receipt.accepted) {
        throw Error(Errc::NotAMember, "blacklist tx rejected: " + receipt.reason);
    }
    auto& entries = blacklists_[std::make_pair(municipality, event_id)];
    for (const Hash32& c : commitments) {
        entries.push_back(BlacklistEntry{c, reason, version, receipt.tx_id});
    }
    if (public_env_) {
        // Digest over the full entry list keeps the public record PII-free.
        Sha256 digest;
        for (const BlacklistEntry& e : entries) {
            digest.update(as_view(e.commitment));
            digest.update(to_string(e.reason));
        }
        public_env_->publish_from(municipality, PublicationKind::BlacklistDigest,
                                  municipality + "/" + event_id + "=" + to_hex(digest.finish()),
                                  to_hex(receipt.tx_id));
    }
    return receipt.tx_id;
}

const ElectoralRegister& ElectoralRegisterModule::reissue_all(const std::string& municipality,
                                                              const std::string& event_id,
                                                              BlacklistReason reason) {
    RegisterState& st = active_state(municipality, event_id);
    std::vector<Hash32> old = st.reg.commitments;
    Date reference_date = st.reference_date;
    blacklist(municipality, old, reason);
    return generate_register(municipality, event_id, reference_date);
}

Hash32 ElectoralRegisterModule::reissue_single(const std::string& municipality,
                                               const std::string& event_id,
                                               const std::string& local_person_id,
                                               BlacklistReason reason) {
    RegisterState& st = active_state(municipality, event_id);
    std::set<Hash32> blocked = blacklisted_commitments(municipality, event_id);
    const VoterSlot* old_slot = nullptr;
    for (std::size_t i = st.slots.size(); i-- > 0;) {
        if (st.slots[i].local_person_id == local_person_id &&
            !blocked.contains(st.slots[i].commitment)) {
            old_slot = &st.slots[i];
            break;
        }
    }
    if (!old_slot) throw Error(Errc::NotInRegister, local_person_id);
    auto record = citizens_.find(municipality, local_person_id);
    if (!record) throw Error(Errc::UnknownId, local_person_id);

    Hash32 old_commitment = old_slot->commitment;

    DeterministicRng salts(seed_, "salt/" + municipality + "/" + event_id + "/v" +
                                      std::to_string(st.reg.version) + "/append/" +
                                      std::to_string(st.slots.size()));
    VoterSlot fresh;
    fresh.local_person_id = local_person_id;
    fresh.salt = salts.bytes32();
    fresh.commitment = make_commitment(fresh.salt, *record);

    st.reg.commitments.push_back(fresh.commitment);
    st.slots.push_back(fresh);
    st.reg.list_digest = register_list_digest(st.reg.commitments);
    st.reg.merkle_root = merkle::root(st.reg.commitments);
    store_slot_private(municipality, st, fresh, st.slots.size() - 1);

    blacklist(municipality, {old_commitment}, reason);
    publish_register(st);
    return fresh.commitment;
}

std::vector<BlacklistEntry> ElectoralRegisterModule::blacklist_entries(
    const std::string& municipality, const std::string& event_id) const {
    auto it = blacklists_.find(std::make_pair(municipality, event_id));
    return it == blacklists_.end() ? std::vector<BlacklistEntry>{} : it->second;
}

std::set<Hash32> ElectoralRegisterModule::blacklisted_commitments(
    const std::string& municipality, const std::string& event_id) const {
    std::set<Hash32> out;
    auto it = blacklists_.find(std::make_pair(municipality, event_id));
    if (it == blacklists_.end()) return out;
    for (const BlacklistEntry& e : it->second) out.insert(e.commitment);
    return out;
}

std::int64_t ElectoralRegisterModule::active_size(const std::string& municipality,
                                                  const std::string& event_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) return 0;
    std::set<Hash32> blocked = blacklisted_commitments(municipality, event_id);
    std::int64_t n = 0;
    for (const Hash32& c : st->reg.commitments) {
        if (!blocked.contains(c)) ++n;
    }
    return n;
}

std::string ElectoralRegisterModule::export_active(const std::string& municipality,
                                                   const std::string& event_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) throw Error(Errc::UnknownRegister, municipality + "/" + event_id);
    return render_register_export(st->reg);
}

std::optional<Hash32> ElectoralRegisterModule::commitment_of(
    const std::string& municipality, const std::string& event_id,
    const std::string& local_person_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) return std::nullopt;
    std::set<Hash32> blocked = blacklisted_commitments(municipality, event_id);
    for (std::size_t i = st->slots.size(); i-- > 0;) {
        const VoterSlot& slot = st->slots[i];
        if (slot.local_person_id == local_person_id && !blocked.contains(slot.commitment)) {
            return slot.commitment;
        }
    }
    return std::nullopt;
}

std::optional<std::string> ElectoralRegisterModule::voter_of(const std::string& municipality,
                                                             const std::string& event_id,
                                                             const Hash32& commitment) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) return std::nullopt;
    for (const VoterSlot& slot : st->slots) {
        if (slot.commitment == commitment) return slot.local_person_id;
    }
    return std::nullopt;
}

namespace {
struct OnChainRegister {
    Hash32 list_digest;
    Hash32 merkle_root;
    std::vector<Hash32> commitments;
};

std::optional<OnChainRegister> read_on_chain(const Ledger& ledger, const ChannelMap& channels,
                                             const std::string& municipality,
                                             const std::string& event_id) {
    auto active = ledger.query_state_granted(
        channels.external, Chaincode::CM,
        ElectoralRegisterModule::state_key_active(municipality, event_id));
    if (!active) return std::nullopt;
    auto value = ledger.query_state_granted(
        channels.external, Chaincode::CM,
        "er/" + municipality + "/" + event_id + "/v" + *active);
    if (!value) return std::nullopt;
    std::vector<std::string> parts = split_ws(*value);
    if (parts.size() < 3) return std::nullopt;
    OnChainRegister ocr;
    auto d = hash_from_hex(parts[0]);
    auto r = hash_from_hex(parts[1]);
    if (!d || !r) return std::nullopt;
    ocr.list_digest = *d;
    ocr.merkle_root = *r;
    for (std::size_t i = 3; i < parts.size(); ++i) {
        auto c = hash_from_hex(parts[i]);
        if (!c) return std::nullopt;
        ocr.commitments.push_back(*c);
    }
    return ocr;
}
}  // namespace

std::optional<Hash32> ElectoralRegisterModule::on_chain_merkle_root(
    const std::string& municipality, const std::string& event_id) const {
    auto ocr = read_on_chain(ledger_, channels_, municipality, event_id);
    if (!ocr) return std::nullopt;
    return ocr->merkle_root;
}

std::optional<Hash32> ElectoralRegisterModule::on_chain_list_digest(
    const std::string& municipality, const std::string& event_id) const {
    auto ocr = read_on_chain(ledger_, channels_, municipality, event_id);
    if (!ocr) return std::nullopt;
    return ocr->list_digest;
}

std::vector<Hash32> ElectoralRegisterModule::on_chain_commitments(
    const std::string& municipality, const std::string& event_id) const {
    auto ocr = read_on_chain(ledger_, channels_, municipality, event_id);
    if (!ocr) return {};
    return ocr->commitments;
}

std::vector<std::pair<std::string, std::string>> ElectoralRegisterModule::register_keys() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, versions] : regs_) {
        if (!versions.empty()) out.push_back(key);
    }
    return out;
}

std::vector<std::string> ElectoralRegisterModule::one_active_commitment_violations(
    const std::string& municipality, const std::string& event_id) const {
    const RegisterState* st = find_active(municipality, event_id);
    if (!st) return {};
    std::set<Hash32> blocked = blacklisted_commitments(municipality, event_id);
    std::map<std::string, int> per_voter;
    for (const VoterSlot& slot : st->slots) {
        if (!blocked.contains(slot.commitment)) per_voter[slot.local_person_id]++;
    }
    std::vector<std::string> violations;
    for (const auto& [voter, n] : per_voter) {
        if (n != 1) {
            violations.push_back(voter + " has " + std::to_string(n) + " active commitments");
        }
    }
    return violations;
}

}  // namespace proverum
