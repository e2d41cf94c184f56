// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/result_publication.hpp"

#include "proverum/errors.hpp"
#include "proverum/hash.hpp"
#include "proverum/public_env.hpp"

namespace proverum {

ResultPublication::ResultPublication(const Pki& pki, Ledger& ledger,
                                     ElectoralRegisterModule& registers,
                                     ArtifactPipeline& artifacts, const Clock& clock,
                                     const ChannelMap& channels)
    : pki_(pki),
      ledger_(ledger),
      registers_(registers),
      artifacts_(artifacts),
      clock_(clock),
      channels_(channels) {}

std::string ResultPublication::result_state_key(Scope scope, const std::string& scope_name,
                                                const std::string& event_id) {
    return "result/" + std::string(to_string(scope)) + "/" + scope_name + "/" + event_id;
}

std::string ResultPublication::destruction_state_key(const std::string& event_id) {
    return "destruct/" + event_id;
}

ResultRecord ResultPublication::build_signed_record(Scope scope, const std::string& scope_name,
                                                    const std::string& event_id,
                                                    std::map<std::string, std::int64_t> counts,
                                                    std::int64_t electorate) {
    ResultRecord rec;
    rec.scope = scope;
    rec.scope_name = scope_name;
    rec.event_id = event_id;
    rec.counts = std::move(counts);
    rec.electorate_size = electorate;
    rec.submitter = scope_name;
    rec.signature = Pki::sign(pki_.transaction_key(rec.submitter), as_view(rec.canonical()));
    return rec;
}

Hash32 ResultPublication::submit_record_tx(const std::string& channel,
                                           const std::string& submitter, const std::string& op,
                                           std::vector<std::string> args) {
    SignedTransaction tx = SignedTransaction::make(pki_.transaction_key(submitter), submitter,
                                                   Chaincode::RP, op, std::move(args),
                                                   clock_.tick);
    TxReceipt receipt = ledger_.submit(channel, std::move(tx));
    if (!receipt.accepted) {
        throw Error(Errc::WrongScope, "result tx rejected: " + receipt.reason);
    }
    return receipt.tx_id;
}

Hash32 ResultPublication::submit_municipal_result(const std::string& municipality,
                                                  const std::string& event_id) {
    const Authority& a = pki_.get(municipality);
    if (a.role != Role::Municipality) throw Error(Errc::WrongScope, municipality);
    auto counts = artifacts_.counts(municipality, event_id);
    if (!counts) {
        throw Error(Errc::StepPreconditionFailed, "no count for " + municipality);
    }
    ResultRecord rec =
        build_signed_record(Scope::Municipality, municipality, event_id, *counts,
                            registers_.active_size(municipality, event_id));
    Hash32 tx_id = submit_record_tx(channels_.cantonal_channel(*a.parent), municipality,
                                    "result_submit", {rec.to_transport()});
    if (public_env_) {
        public_env_->publish_from(municipality, PublicationKind::PreliminaryResult,
                                  rec.to_transport(), to_hex(tx_id));
    }
    return tx_id;
}

Hash32 ResultPublication::submit_forged_result(const std::string& municipality,
                                               const std::string& event_id,
                                               std::map<std::string, std::int64_t> counts,
                                               bool break_signature) {
    const Authority& a = pki_.get(municipality);
    ResultRecord rec =
        build_signed_record(Scope::Municipality, municipality, event_id, std::move(counts),
                            registers_.active_size(municipality, event_id));
    if (break_signature) {
        // Tally tampered after signing: signature no longer matches counts.
        rec.counts.begin()->second += 1;
    }
    return submit_record_tx(channels_.cantonal_channel(*a.parent), municipality, "result_submit",
                            {rec.to_transport()});
}

PlausibilityOutcome ResultPublication::plausibility_check(const std::string& canton,
                                                          const std::string& municipality,
                                                          const std::string& event_id) {
    const Authority& a = pki_.get(canton);
    if (a.role != Role::Canton) throw Error(Errc::WrongScope, canton);

    PlausibilityOutcome outcome;
    auto rec = committed_result(Scope::Municipality, municipality, event_id);
    if (!rec) {
        outcome.pass = false;
        outcome.reasons.push_back("MissingResult");
    } else {
        std::int64_t total = rec->total_votes();
        bool negative = false;
        for (const auto& [_, n] : rec->counts) {
            if (n < 0) negative = true;
        }
        if (negative) outcome.reasons.push_back("NegativeCount");
        if (total > rec->electorate_size) outcome.reasons.push_back("TurnoutExceedsElectorate");
        std::int64_t logged = artifacts_.on_chain_accepted_count(municipality, event_id);
        if (total != logged) outcome.reasons.push_back("LogMismatch");
        double turnout =
            rec->electorate_size == 0 ? 0.0 : double(total) / double(rec->electorate_size);
        if (turnout < 0.0 || turnout > 1.0) outcome.reasons.push_back("TurnoutOutOfRange");
        outcome.pass = outcome.reasons.empty();
    }

    if (!outcome.pass) {
        std::vector<std::string> args{canton, municipality, event_id};
        args.insert(args.end(), outcome.reasons.begin(), outcome.reasons.end());
        outcome.recount_tx_id = submit_record_tx(channels_.cantonal_channel(canton), canton,
                                                 "recount_request", std::move(args));
    }
    plausibility_[municipality + "/" + event_id] = outcome;
    return outcome;
}

std::vector<std::string> ResultPublication::municipalities_of(const std::string& canton) const {
    std::vector<std::string> out;
    for (const auto& [name, a] : pki_.directory()) {
        if (a.role == Role::Municipality && a.parent == canton) out.push_back(name);
    }
    return out;
}

std::vector<std::string> ResultPublication::cantons() const {
    std::vector<std::string> out;
    for (const auto& [name, a] : pki_.directory()) {
        if (a.role == Role::Canton) out.push_back(name);
    }
    return out;
}

Hash32 ResultPublication::aggregate_canton(const std::string& canton,
                                           const std::string& event_id) {
    const Authority& a = pki_.get(canton);
    if (a.role != Role::Canton) throw Error(Errc::WrongScope, canton);

    std::map<std::string, std::int64_t> sum;
    std::int64_t electorate = 0;
    std::vector<std::string> child_transports;
    for (const std::string& municipality : municipalities_of(canton)) {
        auto rec = committed_result(Scope::Municipality, municipality, event_id);
        if (!rec) throw Error(Errc::MissingChildResult, municipality);
        auto outcome = plausibility_.find(municipality + "/" + event_id);
        if (outcome == plausibility_.end()) {
            throw Error(Errc::StepPreconditionFailed,
                        "plausibility not checked for " + municipality);
        }
        if (!outcome->second.pass) throw Error(Errc::ChildFailedPlausibility, municipality);
        for (const auto& [choice, n] : rec->counts) sum[choice] += n;
        electorate += rec->electorate_size;
        child_transports.push_back(rec->to_transport());
    }

    ResultRecord rec = build_signed_record(Scope::Canton, canton, event_id, sum, electorate);
    std::vector<std::string> args{rec.to_transport(),
                                  std::to_string(child_transports.size())};
    args.insert(args.end(), child_transports.begin(), child_transports.end());
    Hash32 tx_id =
        submit_record_tx(channels_.federal, canton, "result_aggregate", std::move(args));
    if (public_env_) {
        public_env_->publish_from(canton, PublicationKind::PreliminaryResult, rec.to_transport(),
                                  to_hex(tx_id));
    }
    return tx_id;
}

Hash32 ResultPublication::aggregate_canton_forged(const std::string& canton,
                                                  const std::string& event_id,
                                                  std::map<std::string, std::int64_t> counts) {
    std::vector<std::string> child_transports;
    std::int64_t electorate = 0;
    for (const std::string& municipality : municipalities_of(canton)) {
        auto rec = committed_result(Scope::Municipality, municipality, event_id);
        if (!rec) throw Error(Errc::MissingChildResult, municipality);
        electorate += rec->electorate_size;
        child_transports.push_back(rec->to_transport());
    }
    ResultRecord rec =
        build_signed_record(Scope::Canton, canton, event_id, std::move(counts), electorate);
    std::vector<std::string> args{rec.to_transport(),
                                  std::to_string(child_transports.size())};
    args.insert(args.end(), child_transports.begin(), child_transports.end());
    return submit_record_tx(channels_.federal, canton, "result_aggregate", std::move(args));
}

Hash32 ResultPublication::aggregate_federal(const std::string& event_id) {
    std::map<std::string, std::int64_t> sum;
    std::int64_t electorate = 0;
    std::vector<std::string> child_transports;
    for (const std::string& canton : cantons()) {
        auto rec = committed_result(Scope::Canton, canton, event_id);
        if (!rec) throw Error(Errc::MissingChildResult, canton);
        for (const auto& [choice, n] : rec->counts) sum[choice] += n;
        electorate += rec->electorate_size;
        child_transports.push_back(rec->to_transport());
    }

    ResultRecord rec =
        build_signed_record(Scope::Federal, "Confederation", event_id, sum, electorate);
    std::vector<std::string> args{rec.to_transport(),
                                  std::to_string(child_transports.size())};
    args.insert(args.end(), child_transports.begin(), child_transports.end());
    Hash32 tx_id = submit_record_tx(channels_.federal, "Confederation", "result_aggregate",
                                    std::move(args));
    if (public_env_) {
        public_env_->publish_from("Confederation", PublicationKind::FederalResult,
                                  rec.to_transport(), to_hex(tx_id));
    }
    return tx_id;
}

std::vector<Hash32> ResultPublication::authorize_destruction(const std::string& issuer,
                                                             const std::string& event_id) {
    const Authority& a = pki_.get(issuer);
    if (a.role != Role::Confederation && a.role != Role::Canton) {
        throw Error(Errc::WrongScope, issuer);
    }
    auto federal = committed_result(Scope::Federal, "Confederation", event_id);
    if (!federal) throw Error(Errc::PrematureDestruction, event_id);

    Hash32 federal_digest = sha256(as_view(federal->canonical()));
    std::vector<Hash32> tx_ids;
    for (const auto& [canton, channel] : channels_.cantonal) {
        if (a.role == Role::Canton && canton != issuer) continue;
        tx_ids.push_back(submit_record_tx(
            channel, issuer, "destruction_command",
            {issuer, event_id, to_hex(federal_digest)}));
    }
    return tx_ids;
}

bool ResultPublication::act_on_destruction(const std::string& municipality,
                                           const std::string& event_id) {
    const Authority& a = pki_.get(municipality);
    if (a.role != Role::Municipality) throw Error(Errc::WrongScope, municipality);
    auto command = ledger_.query_state(channels_.cantonal_channel(*a.parent), Chaincode::RP,
                                       destruction_state_key(event_id), municipality);
    if (!command) return false;
    artifacts_.mark_destroyed(municipality, event_id);
    return true;
}

void ResultPublication::inject_out_of_band_destruction(const std::string& municipality,
                                                       const std::string& event_id,
                                                       const std::string& origin) {
    // No signed transaction on the municipality's channel: the command is
    // ignored; only the attempt is recorded.
    alerts_.push_back(DestructionAlert{municipality, event_id, origin, clock_.tick});
}

std::optional<ResultRecord> ResultPublication::committed_result(Scope scope,
                                                                const std::string& scope_name,
                                                                const std::string& event_id) const {
    std::string channel;
    if (scope == Scope::Municipality) {
        const Authority& a = pki_.get(scope_name);
        channel = channels_.cantonal_channel(*a.parent);
    } else {
        channel = channels_.federal;
    }
    auto state = ledger_.query_state_granted(channel, Chaincode::RP,
                                             result_state_key(scope, scope_name, event_id));
    if (!state) return std::nullopt;
    return ResultRecord::from_transport(*state);
}

}  // namespace proverum
