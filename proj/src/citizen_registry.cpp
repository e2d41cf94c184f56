// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/citizen_registry.hpp"

#include <algorithm>

#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"
#include "proverum/hash.hpp"

namespace proverum {

std::string_view to_string(ResidenceType rt) {
    return rt == ResidenceType::Main ? "main" : "secondary";
}

std::optional<ResidenceType> residence_from_string(std::string_view token) {
    if (token == "main" || token == "Main") return ResidenceType::Main;
    if (token == "secondary" || token == "Secondary") return ResidenceType::Secondary;
    return std::nullopt;
}

Bytes CitizenRecord::canonical_value() const {
    CanonicalWriter w;
    w.field(local_person_id);
    w.field(official_name);
    w.field(first_name);
    w.field(date_of_birth.to_string());
    w.field(nationality);
    w.field(residence_municipality);
    w.field(to_string(residence_type));
    w.field_u64(voting_restriction ? 1 : 0);
    return w.take();
}

CitizenRecord CitizenRecord::from_canonical(ByteView data) {
    CanonicalReader r(data);
    CitizenRecord rec;
    rec.local_person_id = r.field();
    rec.official_name = r.field();
    rec.first_name = r.field();
    auto dob = Date::parse(r.field());
    if (!dob) throw Error(Errc::EncodingError, "bad date of birth");
    rec.date_of_birth = *dob;
    rec.nationality = r.field();
    rec.residence_municipality = r.field();
    auto rt = residence_from_string(r.field());
    if (!rt) throw Error(Errc::EncodingError, "bad residence type");
    rec.residence_type = *rt;
    rec.voting_restriction = r.field_u64() == 1;
    r.expect_end();
    return rec;
}

Bytes CitizenRecord::canonical_identity() const {
    CanonicalWriter w;
    w.field(official_name);
    w.field(first_name);
    w.field(date_of_birth.to_string());
    return w.take();
}

Hash32 CitizenRecord::identity_digest() const { return sha256(as_view(canonical_identity())); }

CitizenRegistry::CitizenRegistry(const Pki& pki, Ledger& ledger, PrivateData& privdata,
                                 const Clock& clock, const ChannelMap& channels,
                                 SensitiveCorpus& corpus)
    : pki_(pki),
      ledger_(ledger),
      privdata_(privdata),
      clock_(clock),
      channels_(channels),
      corpus_(corpus) {}

std::string CitizenRegistry::collection_id(const std::string& municipality) {
    return "cr/" + municipality;
}

std::string CitizenRegistry::record_key(const std::string& local_person_id) {
    return "cr/" + local_person_id;
}

void CitizenRegistry::register_municipality(const std::string& municipality) {
    const Authority& a = pki_.get(municipality);
    if (a.role != Role::Municipality) {
        throw Error(Errc::NotOwner, municipality + " is not a municipality");
    }
    privdata_.create_collection(collection_id(municipality), {municipality});
    municipalities_.push_back(municipality);
}

std::string CitizenRegistry::cantonal_channel_of(const std::string& municipality) const {
    const Authority& a = pki_.get(municipality);
    if (a.role != Role::Municipality || !a.parent) {
        throw Error(Errc::NotOwner, municipality + " is not a registered municipality");
    }
    return channels_.cantonal_channel(*a.parent);
}

Hash32 CitizenRegistry::commit_record(const std::string& municipality,
                                      const CitizenRecord& record) {
    corpus_.add(record.official_name);
    corpus_.add(record.first_name);
    corpus_.add(record.date_of_birth.to_string());
    return privdata_
        .put_private(municipality, collection_id(municipality),
                     record_key(record.local_person_id), record.canonical_value(),
                     cantonal_channel_of(municipality))
        .value_digest;
}

Hash32 CitizenRegistry::create_citizen(const std::string& municipality, CitizenRecord record) {
    if (!record.date_of_birth.valid() || record.date_of_birth > clock_.today) {
        throw Error(Errc::StepPreconditionFailed, "date of birth in the simulated future");
    }
    if (privdata_.read(municipality, collection_id(municipality),
                       record_key(record.local_person_id))) {
        throw Error(Errc::DuplicateId, record.local_person_id);
    }
    record.residence_municipality = municipality;
    ++mutation_count_;
    return commit_record(municipality, record);
}

Hash32 CitizenRegistry::update_citizen(const std::string& municipality, CitizenRecord record) {
    if (!privdata_.read(municipality, collection_id(municipality),
                        record_key(record.local_person_id))) {
        throw Error(Errc::UnknownId, record.local_person_id);
    }
    record.residence_municipality = municipality;
    ++mutation_count_;
    return commit_record(municipality, record);
}

Hash32 CitizenRegistry::delete_citizen(const std::string& municipality,
                                       const std::string& local_person_id) {
    if (!privdata_.read(municipality, collection_id(municipality), record_key(local_person_id))) {
        throw Error(Errc::UnknownId, local_person_id);
    }
    ++mutation_count_;
    PurgeReceipt receipt = privdata_.purge_private(municipality, collection_id(municipality),
                                                   record_key(local_person_id),
                                                   cantonal_channel_of(municipality));
    return receipt.marker_tx_id;
}

Hash32 CitizenRegistry::set_voting_restriction(const std::string& municipality,
                                               const std::string& local_person_id,
                                               bool restricted) {
    auto record = find(municipality, local_person_id);
    if (!record) throw Error(Errc::UnknownId, local_person_id);
    record->voting_restriction = restricted;
    ++mutation_count_;
    return commit_record(municipality, *record);
}

RelocationReceipt CitizenRegistry::relocate(const std::string& from, const std::string& to,
                                            const std::string& local_person_id) {
    if (from == to) throw Error(Errc::SameMunicipality, from);
    auto record = find(from, local_person_id);
    if (!record) throw Error(Errc::UnknownId, local_person_id);

    // Fresh id namespace at the destination.
    std::string new_id = local_person_id;
    int suffix = 1;
    while (privdata_.read(to, collection_id(to), record_key(new_id))) {
        new_id = local_person_id + "-in" + std::to_string(suffix++);
    }
    CitizenRecord moved = *record;
    moved.local_person_id = new_id;
    moved.residence_municipality = to;

    mutation_count_ += 2;  // transfer-in plus purge marker
    PutReceipt transfer = privdata_.put_private(to, collection_id(to), record_key(new_id),
                                                moved.canonical_value(), channels_.federal);
    PurgeReceipt purge = privdata_.purge_private(from, collection_id(from),
                                                 record_key(local_person_id), channels_.federal);

    // Both digest transactions land in the same simulation step; the step
    // boundary cuts them into one federal block.
    return RelocationReceipt{new_id, transfer.tx_id, purge.marker_tx_id};
}

std::optional<CitizenRecord> CitizenRegistry::find(const std::string& municipality,
                                                   const std::string& local_person_id) const {
    const Bytes* value =
        privdata_.read(municipality, collection_id(municipality), record_key(local_person_id));
    if (!value) return std::nullopt;
    return CitizenRecord::from_canonical(as_view(*value));
}

bool CitizenRegistry::verify_record(const std::string& municipality,
                                    const std::string& local_person_id) const {
    std::string channel = cantonal_channel_of(municipality);
    return privdata_.verify_private(municipality, collection_id(municipality),
                                    record_key(local_person_id), channel);
}

std::vector<EligibleVoter> CitizenRegistry::derive_eligible(const std::string& municipality,
                                                            const Date& reference_date) const {
    std::vector<EligibleVoter> out;
    for (const std::string& key : privdata_.keys(municipality, collection_id(municipality))) {
        const Bytes* value = privdata_.read(municipality, collection_id(municipality), key);
        CitizenRecord rec = CitizenRecord::from_canonical(as_view(*value));
        if (rec.nationality != "CH") continue;
        if (rec.date_of_birth.age_at(reference_date) < 18) continue;
        if (rec.residence_type != ResidenceType::Main) continue;
        if (rec.residence_municipality != municipality) continue;
        if (rec.voting_restriction) continue;
        out.push_back(EligibleVoter{std::move(rec), reference_date});
    }
    std::sort(out.begin(), out.end(), [](const EligibleVoter& a, const EligibleVoter& b) {
        return a.record.local_person_id < b.record.local_person_id;
    });
    return out;
}

std::vector<std::string> CitizenRegistry::single_holder_violations() const {
    std::map<std::string, int> holders;  // identity digest -> count
    for (const std::string& mun : municipalities_) {
        for (const std::string& key : privdata_.keys(mun, collection_id(mun))) {
            const Bytes* value = privdata_.read(mun, collection_id(mun), key);
            CitizenRecord rec = CitizenRecord::from_canonical(as_view(*value));
            holders[to_hex(rec.identity_digest())]++;
        }
    }
    std::vector<std::string> violations;
    for (const auto& [identity, count] : holders) {
        if (count != 1) violations.push_back(identity + " held by " + std::to_string(count));
    }
    return violations;
}

}  // namespace proverum
