// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/artifact_lifecycle.hpp"

#include <algorithm>

#include "proverum/errors.hpp"
#include "proverum/hash.hpp"
#include "proverum/strings.hpp"

namespace proverum {

std::string_view to_string(EnvelopeStatus status) {
    switch (status) {
        case EnvelopeStatus::Manufactured: return "Manufactured";
        case EnvelopeStatus::AtPost: return "AtPost";
        case EnvelopeStatus::Delivered: return "Delivered";
        case EnvelopeStatus::Cast: return "Cast";
        case EnvelopeStatus::ReceivedByMunicipality: return "ReceivedByMunicipality";
        case EnvelopeStatus::Counted: return "Counted";
        case EnvelopeStatus::Blacklisted: return "Blacklisted";
        case EnvelopeStatus::Rejected: return "Rejected";
    }
    return "?";
}

ArtifactPipeline::ArtifactPipeline(const Pki& pki, Ledger& ledger,
                                   ElectoralRegisterModule& registers, const Clock& clock,
                                   const ChannelMap& channels, const std::string& esp,
                                   const std::string& post)
    : pki_(pki),
      ledger_(ledger),
      registers_(registers),
      clock_(clock),
      channels_(channels),
      esp_(esp),
      post_(post) {}

std::string ArtifactPipeline::reception_state_key(const std::string& municipality,
                                                  const std::string& event_id) {
    return "reception/" + municipality + "/" + event_id;
}

void ArtifactPipeline::log_route(const std::string& actor, const VotingEnvelope& env,
                                 const std::string& hop) {
    SignedTransaction tx = SignedTransaction::make(
        pki_.transaction_key(actor), actor, Chaincode::CM, "ve_route",
        {env.municipality, env.event_id, env.serial, to_hex(env.commitment), hop}, clock_.tick);
    TxReceipt receipt = ledger_.submit(channels_.external, std::move(tx));
    if (!receipt.accepted) throw Error(Errc::NotAMember, "route tx rejected: " + receipt.reason);
}

void ArtifactPipeline::log_reception(const std::string& municipality,
                                     const std::string& event_id, const VotingEnvelope& env,
                                     const ReceptionDecision& decision,
                                     const std::string& choice) {
    SignedTransaction tx = SignedTransaction::make(
        pki_.transaction_key(municipality), municipality, Chaincode::CM, "ve_reception",
        {municipality, event_id, env.serial, to_hex(env.commitment),
         decision.accepted ? "Accepted" : "Rejected",
         decision.reason.empty() ? "-" : decision.reason, choice.empty() ? "-" : choice},
        clock_.tick);
    TxReceipt receipt = ledger_.submit(channels_.external, std::move(tx));
    if (!receipt.accepted) {
        throw Error(Errc::NotAMember, "reception tx rejected: " + receipt.reason);
    }
}

std::vector<std::string> ArtifactPipeline::manufacture(const std::string& esp,
                                                       const std::string& municipality,
                                                       const std::string& event_id,
                                                       const std::string& register_export_text) {
    ParsedRegisterExport parsed = parse_register_export(register_export_text);
    auto on_chain = registers_.on_chain_list_digest(municipality, event_id);
    if (!on_chain) {
        throw Error(Errc::NoOnChainDigest, municipality + "/" + event_id);
    }
    Hash32 recomputed = register_list_digest(parsed.commitments);
    if (recomputed != *on_chain || parsed.list_digest != *on_chain) {
        // The received snapshot does not match the published digest: abort.
        throw Error(Errc::RegisterDigestMismatch, municipality + "/" + event_id);
    }

    const ElectoralRegister* reg = registers_.active(municipality, event_id);
    std::string prefix = municipality + "/" + event_id + "/v" +
                         std::to_string(reg ? reg->version : 0) + "/";
    std::vector<std::string> serials;
    for (std::size_t i = 0; i < parsed.commitments.size(); ++i) {
        VotingEnvelope env;
        env.serial = prefix + std::to_string(i);
        env.commitment = parsed.commitments[i];
        env.event_id = event_id;
        env.municipality = municipality;
        env.status = EnvelopeStatus::Manufactured;
        env.holder = esp;
        log_route(esp, env, "manufactured");
        serials.push_back(env.serial);
        envelopes_.push_back(std::move(env));
    }
    return serials;
}

std::vector<VotingEnvelope*> ArtifactPipeline::event_envelopes(const std::string& municipality,
                                                               const std::string& event_id) {
    std::vector<VotingEnvelope*> out;
    for (VotingEnvelope& e : envelopes_) {
        if (e.municipality == municipality && e.event_id == event_id) out.push_back(&e);
    }
    return out;
}

void ArtifactPipeline::hand_to_post(const std::string& municipality,
                                    const std::string& event_id) {
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (e->status == EnvelopeStatus::Manufactured && e->holder == esp_) {
            e->status = EnvelopeStatus::AtPost;
            e->holder = post_;
            log_route(post_, *e, "at-post");
        }
    }
}

BatchReport ArtifactPipeline::post_verify_batch(const std::string& post,
                                                const std::string& municipality,
                                                const std::string& event_id) {
    // Fresh salts make commitments pairwise distinct, so sets suffice.
    std::set<Hash32> expected;
    for (const Hash32& c : registers_.on_chain_commitments(municipality, event_id)) {
        expected.insert(c);
    }
    std::set<Hash32> batch;
    for (VotingEnvelope& e : envelopes_) {
        if (e.event_id == event_id && e.holder == post &&
            e.status == EnvelopeStatus::AtPost && e.municipality == municipality) {
            batch.insert(e.commitment);
        }
    }

    BatchReport report;
    for (const Hash32& c : expected) {
        if (!batch.contains(c)) report.missing.push_back(c);
    }
    for (const Hash32& c : batch) {
        if (!expected.contains(c)) report.foreign.push_back(c);
    }
    report.complete = report.missing.empty() && report.foreign.empty();
    return report;
}

void ArtifactPipeline::deliver(const std::string& municipality, const std::string& event_id) {
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (e->status == EnvelopeStatus::AtPost && e->holder == post_) {
            auto voter = registers_.voter_of(municipality, event_id, e->commitment);
            e->status = EnvelopeStatus::Delivered;
            e->holder = voter ? "voter:" + municipality + "/" + *voter : "voter:unknown";
            log_route(post_, *e, "delivered");
        }
    }
}

void ArtifactPipeline::cast(const std::string& municipality, const std::string& event_id,
                            const std::string& local_person_id, const std::string& choice) {
    auto commitment = registers_.commitment_of(municipality, event_id, local_person_id);
    if (!commitment) throw Error(Errc::NotInRegister, local_person_id);
    for (VotingEnvelope& e : envelopes_) {
        if (e.municipality == municipality && e.event_id == event_id &&
            e.commitment == *commitment && e.status == EnvelopeStatus::Delivered) {
            e.status = EnvelopeStatus::Cast;
            e.vote_choice = choice;
            return;
        }
    }
    throw Error(Errc::UnknownKey, "no delivered envelope for " + local_person_id);
}

void ArtifactPipeline::return_via_post(const std::string& municipality,
                                       const std::string& event_id) {
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (e->status == EnvelopeStatus::Cast && e->holder.starts_with("voter:")) {
            e->holder = municipality;
            log_route(post_, *e, "returned");
        }
    }
}

ReceptionDecision ArtifactPipeline::receive_and_validate(const std::string& municipality,
                                                         const std::string& event_id,
                                                         const std::string& serial) {
    VotingEnvelope* env = find_envelope(serial);
    if (!env) throw Error(Errc::UnknownKey, serial);

    ReceptionDecision decision;
    std::vector<Hash32> active = registers_.on_chain_commitments(municipality, event_id);
    std::set<Hash32> blocked = registers_.blacklisted_commitments(municipality, event_id);
    auto key = std::make_pair(municipality, event_id);

    if (env->event_id != event_id) {
        decision = {false, "WrongEvent"};
    } else if (std::find(active.begin(), active.end(), env->commitment) == active.end()) {
        decision = {false, "NotInRegister"};
    } else if (blocked.contains(env->commitment)) {
        decision = {false, "Blacklisted"};
    } else if (accepted_[key].contains(to_hex(env->commitment))) {
        decision = {false, "DuplicateCast"};
    } else {
        decision = {true, ""};
    }

    if (decision.accepted) {
        accepted_[key].insert(to_hex(env->commitment));
        env->status = EnvelopeStatus::ReceivedByMunicipality;
    } else {
        env->status =
            decision.reason == "Blacklisted" ? EnvelopeStatus::Blacklisted : EnvelopeStatus::Rejected;
    }
    log_reception(municipality, event_id, *env, decision, env->vote_choice);
    decision_log_.push_back(env->serial + " " + to_hex(env->commitment) + " " +
                            (decision.accepted ? "Accepted" : "Rejected") + " " +
                            (decision.reason.empty() ? "-" : decision.reason) + " " +
                            (env->vote_choice.empty() ? "-" : env->vote_choice));
    return decision;
}

std::pair<std::size_t, std::size_t> ArtifactPipeline::receive_all(const std::string& municipality,
                                                                  const std::string& event_id) {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    for (VotingEnvelope& e : envelopes_) {
        if (e.status == EnvelopeStatus::Cast && e.holder == municipality) {
            if (receive_and_validate(municipality, event_id, e.serial).accepted) {
                ++accepted;
            } else {
                ++rejected;
            }
        }
    }
    return {accepted, rejected};
}

std::map<std::string, std::int64_t> ArtifactPipeline::count_received(
    const std::string& municipality, const std::string& event_id) {
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (e->status == EnvelopeStatus::Cast && e->holder == municipality) {
            throw Error(Errc::StepPreconditionFailed, "undecided envelope " + e->serial);
        }
    }
    std::map<std::string, std::int64_t> tally{{"yes", 0}, {"no", 0}};
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (e->status == EnvelopeStatus::ReceivedByMunicipality) {
            tally[e->vote_choice]++;
            e->status = EnvelopeStatus::Counted;
        } else if (e->status == EnvelopeStatus::Counted) {
            tally[e->vote_choice]++;
        }
    }
    counts_[std::make_pair(municipality, event_id)] = tally;
    return tally;
}

std::optional<std::map<std::string, std::int64_t>> ArtifactPipeline::counts(
    const std::string& municipality, const std::string& event_id) const {
    auto it = counts_.find(std::make_pair(municipality, event_id));
    if (it == counts_.end()) return std::nullopt;
    return it->second;
}

void ArtifactPipeline::mark_destroyed(const std::string& municipality,
                                      const std::string& event_id) {
    for (VotingEnvelope* e : event_envelopes(municipality, event_id)) {
        if (!e->destroyed &&
            (e->status == EnvelopeStatus::Counted || e->status == EnvelopeStatus::Rejected ||
             e->status == EnvelopeStatus::Blacklisted ||
             e->status == EnvelopeStatus::ReceivedByMunicipality)) {
            e->destroyed = true;
        }
    }
}

VotingEnvelope* ArtifactPipeline::find_envelope(const std::string& serial) {
    for (VotingEnvelope& e : envelopes_) {
        if (e.serial == serial) return &e;
    }
    return nullptr;
}

std::string ArtifactPipeline::inject_envelope(const std::string& municipality,
                                              const std::string& event_id,
                                              const Hash32& commitment,
                                              const std::string& holder) {
    VotingEnvelope env;
    env.serial = municipality + "/" + event_id + "/forged/" + std::to_string(forged_counter_++);
    env.commitment = commitment;
    env.event_id = event_id;
    env.municipality = municipality;
    env.status = EnvelopeStatus::Manufactured;
    env.holder = holder;
    envelopes_.push_back(env);
    return env.serial;
}

std::vector<std::string> ArtifactPipeline::audit_routes(const std::string& municipality,
                                                        const std::string& event_id) const {
    // Last logged hop per serial from the on-chain route log.
    std::map<std::string, std::string> logged;
    const Channel& external = ledger_.channel(channels_.external);
    for (const Block& b : external.blocks) {
        for (const CommittedTx& ct : b.txs) {
            if (!ct.valid || ct.tx.op != "ve_route" || ct.tx.args.size() < 5) continue;
            if (ct.tx.args[0] != municipality || ct.tx.args[1] != event_id) continue;
            logged[ct.tx.args[2]] = ct.tx.args[4];
        }
    }
    // Expected holder implied by each logged hop.
    std::vector<std::string> mismatches;
    for (const VotingEnvelope& e : envelopes_) {
        if (e.municipality != municipality || e.event_id != event_id) continue;
        auto it = logged.find(e.serial);
        if (it == logged.end()) continue;
        const std::string& hop = it->second;
        bool ok = true;
        if (hop == "manufactured") {
            ok = e.holder == esp_;
        } else if (hop == "at-post") {
            ok = e.holder == post_;
        } else if (hop == "delivered") {
            ok = e.holder.starts_with("voter:");
        } else if (hop == "returned") {
            ok = e.holder == municipality;
        }
        if (!ok) {
            mismatches.push_back(e.serial + " logged=" + hop + " holder=" + e.holder);
        }
    }
    return mismatches;
}

std::vector<std::string> ArtifactPipeline::reception_log(const std::string& municipality,
                                                         const std::string& event_id) const {
    auto state = ledger_.query_state_granted(channels_.external, Chaincode::CM,
                                             reception_state_key(municipality, event_id));
    if (!state) return {};
    std::vector<std::string> lines;
    for (const std::string& line : split(*state, '\n')) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    return lines;
}

std::int64_t ArtifactPipeline::on_chain_accepted_count(const std::string& municipality,
                                                       const std::string& event_id) const {
    std::int64_t n = 0;
    for (const std::string& line : reception_log(municipality, event_id)) {
        std::vector<std::string> parts = split_ws(line);
        if (parts.size() >= 3 && parts[2] == "Accepted") ++n;
    }
    return n;
}

std::int64_t ArtifactPipeline::storage_shortfall(const std::string& municipality,
                                                 const std::string& event_id) const {
    std::int64_t present = 0;
    for (const VotingEnvelope& e : envelopes_) {
        if (e.municipality == municipality && e.event_id == event_id &&
            (e.status == EnvelopeStatus::ReceivedByMunicipality ||
             e.status == EnvelopeStatus::Counted) &&
            e.holder == municipality) {
            ++present;
        }
    }
    return on_chain_accepted_count(municipality, event_id) - present;
}

ConservationReport ArtifactPipeline::conservation(const std::string& municipality,
                                                  const std::string& event_id) const {
    ConservationReport report;
    for (const VotingEnvelope& e : envelopes_) {
        if (e.municipality != municipality || e.event_id != event_id) continue;
        report.by_status[e.status]++;
        report.total++;
    }
    std::size_t sum = 0;
    for (const auto& [_, n] : report.by_status) sum += n;
    report.ok = sum == report.total;
    return report;
}

}  // namespace proverum
