// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proverum/artifact_lifecycle.hpp"
#include "proverum/result_record.hpp"

namespace proverum {

class PublicEnv;

struct PlausibilityOutcome {
    bool pass = false;
    std::vector<std::string> reasons;
    std::optional<Hash32> recount_tx_id;  // committed when the check fails
};

struct DestructionAlert {
    std::string municipality;
    std::string event_id;
    std::string origin;  // e.g. "email:evil@example.org"
    std::uint64_t tick = 0;
};

// The result publication contract: signed municipal preliminary results on
// cantonal channels, cantonal plausibility checks and aggregation, the
// federal tally, and authenticated destruction commands.
class ResultPublication {
  public:
    ResultPublication(const Pki& pki, Ledger& ledger, ElectoralRegisterModule& registers,
                      ArtifactPipeline& artifacts, const Clock& clock,
                      const ChannelMap& channels);

    void attach_public_env(PublicEnv* env) { public_env_ = env; }

    /// Builds the record from the module's own count and electorate, signs
    /// and submits it on the caller's cantonal channel.
    Hash32 submit_municipal_result(const std::string& municipality, const std::string& event_id);

    /// Adversarial variant: commits a record with attacker-chosen counts
    /// and, optionally, a signature over different numbers.
    Hash32 submit_forged_result(const std::string& municipality, const std::string& event_id,
                                std::map<std::string, std::int64_t> counts,
                                bool break_signature);

    PlausibilityOutcome plausibility_check(const std::string& canton,
                                           const std::string& municipality,
                                           const std::string& event_id);

    /// Sum of the canton's pass-checked municipal records, committed on the
    /// federal channel with the child records embedded for re-validation.
    Hash32 aggregate_canton(const std::string& canton, const std::string& event_id);

    /// Adversarial variant for forged cantonal aggregates.
    Hash32 aggregate_canton_forged(const std::string& canton, const std::string& event_id,
                                   std::map<std::string, std::int64_t> counts);

    Hash32 aggregate_federal(const std::string& event_id);

    /// Requires a committed federal aggregate; commits a signed destruction
    /// command on every cantonal channel.
    std::vector<Hash32> authorize_destruction(const std::string& issuer,
                                              const std::string& event_id);

    /// Municipality acts only on a valid signed command found on its
    /// cantonal channel.
    bool act_on_destruction(const std::string& municipality, const std::string& event_id);

    /// Out-of-band command (no signed transaction): ignored and logged.
    void inject_out_of_band_destruction(const std::string& municipality,
                                        const std::string& event_id, const std::string& origin);

    const std::vector<DestructionAlert>& destruction_alerts() const { return alerts_; }

    std::optional<ResultRecord> committed_result(Scope scope, const std::string& scope_name,
                                                 const std::string& event_id) const;

    const std::map<std::string, PlausibilityOutcome>& plausibility_outcomes() const {
        return plausibility_;
    }

    static std::string result_state_key(Scope scope, const std::string& scope_name,
                                        const std::string& event_id);
    static std::string destruction_state_key(const std::string& event_id);

  private:
    ResultRecord build_signed_record(Scope scope, const std::string& scope_name,
                                     const std::string& event_id,
                                     std::map<std::string, std::int64_t> counts,
                                     std::int64_t electorate);
    Hash32 submit_record_tx(const std::string& channel, const std::string& submitter,
                            const std::string& op, std::vector<std::string> args);
    std::vector<std::string> municipalities_of(const std::string& canton) const;
    std::vector<std::string> cantons() const;

    const Pki& pki_;
    Ledger& ledger_;
    ElectoralRegisterModule& registers_;
    ArtifactPipeline& artifacts_;
    const Clock& clock_;
    const ChannelMap& channels_;
    PublicEnv* public_env_ = nullptr;

    std::map<std::string, PlausibilityOutcome> plausibility_;  // "<mun>/<event>"
    std::vector<DestructionAlert> alerts_;
};

}  // namespace proverum
