// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proverum/channel_map.hpp"
#include "proverum/date.hpp"
#include "proverum/privdata.hpp"

namespace proverum {

enum class ResidenceType { Main, Secondary };

std::string_view to_string(ResidenceType rt);
std::optional<ResidenceType> residence_from_string(std::string_view token);

/// eCH-derived citizen master record; the private value of the citizen
/// management contract. Only its digest ever reaches a shared channel.
struct CitizenRecord {
    std::string local_person_id;
    std::string official_name;
    std::string first_name;
    Date date_of_birth;
    std::string nationality;  // ISO country code, "CH" for Swiss
    std::string residence_municipality;
    ResidenceType residence_type = ResidenceType::Main;
    bool voting_restriction = false;

    Bytes canonical_value() const;
    static CitizenRecord from_canonical(ByteView data);

    /// Cross-municipality identity used by the single-holder invariant and
    /// the voter commitments: (officialName, firstName, dateOfBirth).
    Bytes canonical_identity() const;
    Hash32 identity_digest() const;
};

struct EligibleVoter {
    CitizenRecord record;
    Date eligibility_date;
};

struct RelocationReceipt {
    std::string new_local_id;
    Hash32 transfer_tx_id;
    Hash32 purge_tx_id;
};

// Identity half of the citizen management contract: record CRUD, voting
// restrictions, the relocation protocol and the eligibility filter.
class CitizenRegistry {
  public:
    CitizenRegistry(const Pki& pki, Ledger& ledger, PrivateData& privdata, const Clock& clock,
                    const ChannelMap& channels, SensitiveCorpus& corpus);

    /// Registers the municipality's private collection; topology calls this
    /// once per municipality.
    void register_municipality(const std::string& municipality);

    Hash32 create_citizen(const std::string& municipality, CitizenRecord record);
    Hash32 update_citizen(const std::string& municipality, CitizenRecord record);
    Hash32 delete_citizen(const std::string& municipality, const std::string& local_person_id);

    Hash32 set_voting_restriction(const std::string& municipality,
                                  const std::string& local_person_id, bool restricted);

    RelocationReceipt relocate(const std::string& from, const std::string& to,
                               const std::string& local_person_id);

    /// Deterministic (sorted by local id) list of voters with Swiss
    /// citizenship, age >= 18 at the reference date, main residence here and
    /// no voting restriction.
    std::vector<EligibleVoter> derive_eligible(const std::string& municipality,
                                               const Date& reference_date) const;

    std::optional<CitizenRecord> find(const std::string& municipality,
                                      const std::string& local_person_id) const;

    bool verify_record(const std::string& municipality, const std::string& local_person_id) const;

    static std::string collection_id(const std::string& municipality);
    static std::string record_key(const std::string& local_person_id);

    /// Every simulated person holds their record in exactly one municipal
    /// collection; returns the offending identities if violated.
    std::vector<std::string> single_holder_violations() const;

    std::size_t mutation_count() const { return mutation_count_; }

  private:
    std::string cantonal_channel_of(const std::string& municipality) const;
    Hash32 commit_record(const std::string& municipality, const CitizenRecord& record);

    const Pki& pki_;
    Ledger& ledger_;
    PrivateData& privdata_;
    const Clock& clock_;
    const ChannelMap& channels_;
    SensitiveCorpus& corpus_;
    std::vector<std::string> municipalities_;
    std::size_t mutation_count_ = 0;  // audit-completeness bookkeeping
};

}  // namespace proverum
