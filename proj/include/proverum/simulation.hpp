// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "proverum/artifact_lifecycle.hpp"
#include "proverum/citizen_registry.hpp"
#include "proverum/electoral_register.hpp"
#include "proverum/public_env.hpp"
#include "proverum/result_publication.hpp"
#include "proverum/topology.hpp"

namespace proverum {

/// Validation logic of the citizen-management contract, run by every peer
/// at commit time.
ChaincodeResult cm_chaincode(WorldState& state, const SignedTransaction& tx);

/// Result-publication contract validation; needs the directory to re-check
/// embedded record signatures and issuer roles.
ChaincodeResult rp_chaincode(const Pki& pki, WorldState& state, const SignedTransaction& tx);

// The full private+public environment, wired from a topology config. One
// deterministic event loop: module operations submit transactions, the step
// boundary cuts blocks and produces PoA blocks.
class Simulation {
  public:
    Simulation(std::uint64_t seed, TopologyConfig config);

    /// Step boundary: cut every channel with pending transactions (scheduled
    /// orderer), produce the public PoA block, advance the tick.
    void end_step();

    std::uint64_t seed() const { return seed_; }
    Clock& clock() { return clock_; }
    const TopologyConfig& config() const { return config_; }
    const ChannelMap& channels() const { return channel_map_; }

    Pki& pki() { return *pki_; }
    const Pki& pki() const { return *pki_; }
    Ledger& ledger() { return *ledger_; }
    const Ledger& ledger() const { return *ledger_; }
    PrivateData& privdata() { return *privdata_; }
    CitizenRegistry& citizens() { return *citizens_; }
    const CitizenRegistry& citizens() const { return *citizens_; }
    ElectoralRegisterModule& registers() { return *registers_; }
    const ElectoralRegisterModule& registers() const { return *registers_; }
    ArtifactPipeline& artifacts() { return *artifacts_; }
    const ArtifactPipeline& artifacts() const { return *artifacts_; }
    ResultPublication& results() { return *results_; }
    PublicEnv& public_env() { return *public_env_; }
    const PublicEnv& public_env() const { return *public_env_; }
    SensitiveCorpus& corpus() { return corpus_; }
    const SensitiveCorpus& corpus() const { return corpus_; }

    const std::string& esp() const { return esp_; }
    const std::string& post() const { return post_; }

    std::vector<std::string> municipalities() const;
    std::vector<std::string> cantons() const;

    /// (municipality, event) pairs with a generated register.
    std::vector<std::pair<std::string, std::string>> register_keys() const;

  private:
    std::uint64_t seed_;
    TopologyConfig config_;
    Clock clock_;
    SensitiveCorpus corpus_;
    ChannelMap channel_map_;
    std::string esp_;
    std::string post_;

    // unique_ptr keeps cross-module references stable.
    std::unique_ptr<Pki> pki_;
    std::unique_ptr<Ledger> ledger_;
    std::unique_ptr<PrivateData> privdata_;
    std::unique_ptr<CitizenRegistry> citizens_;
    std::unique_ptr<ElectoralRegisterModule> registers_;
    std::unique_ptr<ArtifactPipeline> artifacts_;
    std::unique_ptr<ResultPublication> results_;
    std::unique_ptr<PublicEnv> public_env_;
};

}  // namespace proverum
