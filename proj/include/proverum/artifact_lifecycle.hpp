// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proverum/electoral_register.hpp"

namespace proverum {

enum class EnvelopeStatus {
    Manufactured,
    AtPost,
    Delivered,
    Cast,
    ReceivedByMunicipality,
    Counted,
    Blacklisted,
    Rejected,
};

std::string_view to_string(EnvelopeStatus status);

/// Physical-artifact proxy: one envelope per register commitment.
struct VotingEnvelope {
    std::string serial;
    Hash32 commitment;
    std::string event_id;
    std::string municipality;
    EnvelopeStatus status = EnvelopeStatus::Manufactured;
    std::string holder;  // actor currently in possession
    std::string vote_choice;
    bool destroyed = false;
};

struct BatchReport {
    bool complete = false;
    std::vector<Hash32> missing;
    std::vector<Hash32> foreign;
};

struct ReceptionDecision {
    bool accepted = false;
    std::string reason;  // NotInRegister | Blacklisted | DuplicateCast | WrongEvent
};

struct ConservationReport {
    bool ok = false;
    std::map<EnvelopeStatus, std::size_t> by_status;
    std::size_t total = 0;
};

// The envelope pipeline: manufacture at the ESP, batch verification at the
// post, delivery, casting, municipal reception and the tallying counts.
class ArtifactPipeline {
  public:
    ArtifactPipeline(const Pki& pki, Ledger& ledger, ElectoralRegisterModule& registers,
                     const Clock& clock, const ChannelMap& channels, const std::string& esp,
                     const std::string& post);

    /// The ESP checks the received register data against the on-chain list
    /// digest before production; a mismatch aborts manufacture.
    std::vector<std::string> manufacture(const std::string& esp, const std::string& municipality,
                                         const std::string& event_id,
                                         const std::string& register_export_text);

    void hand_to_post(const std::string& municipality, const std::string& event_id);

    BatchReport post_verify_batch(const std::string& post, const std::string& municipality,
                                  const std::string& event_id);

    void deliver(const std::string& municipality, const std::string& event_id);

    /// Voter action; resolves the voter's active commitment to an envelope.
    void cast(const std::string& municipality, const std::string& event_id,
              const std::string& local_person_id, const std::string& choice);

    void return_via_post(const std::string& municipality, const std::string& event_id);

    ReceptionDecision receive_and_validate(const std::string& municipality,
                                           const std::string& event_id,
                                           const std::string& serial);

    /// Runs reception for every envelope currently held by the municipality
    /// in status Cast; returns (accepted, rejected).
    std::pair<std::size_t, std::size_t> receive_all(const std::string& municipality,
                                                    const std::string& event_id);

    std::map<std::string, std::int64_t> count_received(const std::string& municipality,
                                                       const std::string& event_id);

    std::optional<std::map<std::string, std::int64_t>> counts(const std::string& municipality,
                                                              const std::string& event_id) const;

    void mark_destroyed(const std::string& municipality, const std::string& event_id);

    // --- audit, sweeps and adversarial hooks ---------------------------------

    std::vector<VotingEnvelope>& envelopes_mut() { return envelopes_; }
    const std::vector<VotingEnvelope>& envelopes() const { return envelopes_; }
    VotingEnvelope* find_envelope(const std::string& serial);
    std::vector<VotingEnvelope*> event_envelopes(const std::string& municipality,
                                                 const std::string& event_id);

    /// Forged envelope enters the pipeline outside the honest flow.
    std::string inject_envelope(const std::string& municipality, const std::string& event_id,
                                const Hash32& commitment, const std::string& holder);

    /// Logged route (on-chain) vs actual holder divergences.
    std::vector<std::string> audit_routes(const std::string& municipality,
                                          const std::string& event_id) const;

    /// On-chain reception log lines for (municipality, event).
    std::vector<std::string> reception_log(const std::string& municipality,
                                           const std::string& event_id) const;

    /// On-chain count of accepted receptions.
    std::int64_t on_chain_accepted_count(const std::string& municipality,
                                         const std::string& event_id) const;

    /// Envelopes physically present in municipal storage vs the on-chain
    /// accepted count; a shortfall means stored envelopes disappeared.
    std::int64_t storage_shortfall(const std::string& municipality,
                                   const std::string& event_id) const;

    ConservationReport conservation(const std::string& municipality,
                                    const std::string& event_id) const;

    /// In-module decision log (call order), for the recount oracle.
    const std::vector<std::string>& decision_log() const { return decision_log_; }

    static std::string reception_state_key(const std::string& municipality,
                                           const std::string& event_id);

  private:
    void log_route(const std::string& actor, const VotingEnvelope& env, const std::string& hop);
    void log_reception(const std::string& municipality, const std::string& event_id,
                       const VotingEnvelope& env, const ReceptionDecision& decision,
                       const std::string& choice);

    const Pki& pki_;
    Ledger& ledger_;
    ElectoralRegisterModule& registers_;
    const Clock& clock_;
    const ChannelMap& channels_;
    std::string esp_;
    std::string post_;

    std::vector<VotingEnvelope> envelopes_;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> accepted_;  // commitments
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::int64_t>> counts_;
    std::vector<std::string> decision_log_;
    std::size_t forged_counter_ = 0;
};

}  // namespace proverum
