// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/simulation.hpp"

#include <charconv>

#include "proverum/errors.hpp"
#include "proverum/hash.hpp"
#include "proverum/merkle.hpp"
#include "proverum/result_record.hpp"
#include "proverum/strings.hpp"

namespace proverum {

const std::string& ChannelMap::cantonal_channel(const std::string& canton) const {
    auto it = cantonal.find(canton);
    if (it == cantonal.end()) throw Error(Errc::UnknownChannel, "no cantonal channel: " + canton);
    return it->second;
}

namespace {
ChaincodeResult invalid(std::string why) { return {false, std::move(why)}; }

bool is_hex_digest(const std::string& s) { return hash_from_hex(s).has_value(); }

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    std::uint64_t v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

void append_line(WorldState& state, const std::string& key, const std::string& line) {
    auto it = state.find(key);
    if (it == state.end()) {
        state[key] = line;
    } else {
        it->second += "\n" + line;
    }
}
}  // namespace

ChaincodeResult cm_chaincode(WorldState& state, const SignedTransaction& tx) {
    const std::vector<std::string>& a = tx.args;
    if (tx.op == "priv_digest" || tx.op == "priv_purge") {
        if (a.size() != 3) return invalid("bad argument count");
        if (!is_hex_digest(a[2])) return invalid("malformed value digest");
        std::string key = "priv/" + a[0] + "/" + a[1];
        state[key] = tx.op == "priv_digest" ? a[2] : "purged:" + a[2];
        return {};
    }
    if (tx.op == "er_publish") {
        if (a.size() < 6) return invalid("bad argument count");
        auto version = parse_u64(a[2]);
        auto n = parse_u64(a[5]);
        if (!version || *version == 0 || !n) return invalid("bad version or count");
        if (a.size() != 6 + *n) return invalid("commitment count mismatch");
        if (!is_hex_digest(a[3]) || !is_hex_digest(a[4])) return invalid("malformed digest");
        std::vector<Hash32> commitments;
        for (std::uint64_t i = 0; i < *n; ++i) {
            auto c = hash_from_hex(a[6 + i]);
            if (!c) return invalid("malformed commitment");
            commitments.push_back(*c);
        }
        // Peers recompute both digests; a register whose published digests
        // do not match its own commitment list never becomes valid state.
        if (to_hex(register_list_digest(commitments)) != a[3]) {
            return invalid("list digest mismatch");
        }
        if (to_hex(merkle::root(commitments)) != a[4]) return invalid("merkle root mismatch");

        std::string active_key = "er/" + a[0] + "/" + a[1] + "/active";
        auto active = state.find(active_key);
        if (active != state.end()) {
            auto current = parse_u64(active->second);
            if (current && *version < *current) return invalid("stale register version");
        }
        state[active_key] = std::to_string(*version);
        std::string value = a[3] + " " + a[4] + " " + a[5];
        for (std::uint64_t i = 0; i < *n; ++i) value += " " + a[6 + i];
        state["er/" + a[0] + "/" + a[1] + "/v" + a[2]] = value;
        return {};
    }
    if (tx.op == "er_blacklist") {
        if (a.size() < 5) return invalid("bad argument count");
        auto n = parse_u64(a[4]);
        if (!n || a.size() != 5 + *n) return invalid("commitment count mismatch");
        for (std::uint64_t i = 0; i < *n; ++i) {
            if (!is_hex_digest(a[5 + i])) return invalid("malformed commitment");
            append_line(state, "bl/" + a[0] + "/" + a[1], a[5 + i] + " " + a[3] + " " + a[2]);
        }
        return {};
    }
    if (tx.op == "ve_route") {
        if (a.size() != 5) return invalid("bad argument count");
        if (!is_hex_digest(a[3])) return invalid("malformed commitment");
        state["route/" + a[0] + "/" + a[1] + "/" + a[2]] = a[4];
        return {};
    }
    if (tx.op == "ve_reception") {
        if (a.size() != 7) return invalid("bad argument count");
        if (!is_hex_digest(a[3])) return invalid("malformed commitment");
        if (a[4] != "Accepted" && a[4] != "Rejected") return invalid("bad decision");
        append_line(state, "reception/" + a[0] + "/" + a[1],
                    a[2] + " " + a[3] + " " + a[4] + " " + a[5] + " " + a[6]);
        return {};
    }
    return invalid("unknown CM operation " + tx.op);
}

namespace {
bool record_signature_ok(const Pki& pki, const ResultRecord& rec) {
    const Certificate* cert = pki.find_issued(rec.submitter, rec.submitter + "/tx");
    if (!cert) return false;
    return Pki::verify(*cert, as_view(rec.canonical()), rec.signature);
}

ChaincodeResult validate_counts(const ResultRecord& rec) {
    for (const auto& [_, n] : rec.counts) {
        if (n < 0) return invalid("negative count");
    }
    if (rec.total_votes() > rec.electorate_size) return invalid("votes exceed electorate");
    return {};
}
}  // namespace

ChaincodeResult rp_chaincode(const Pki& pki, WorldState& state, const SignedTransaction& tx) {
    const std::vector<std::string>& a = tx.args;
    if (tx.op == "result_submit") {
        if (a.size() != 1) return invalid("bad argument count");
        ResultRecord rec;
        try {
            rec = ResultRecord::from_transport(a[0]);
        } catch (const Error& e) {
            return invalid(e.what());
        }
        if (rec.scope != Scope::Municipality) return invalid("result_submit is municipal only");
        if (rec.submitter != tx.submitter) return invalid("submitter mismatch");
        if (!record_signature_ok(pki, rec)) return invalid("record signature invalid");
        if (ChaincodeResult rc = validate_counts(rec); !rc.ok) return rc;
        state[ResultPublication::result_state_key(rec.scope, rec.scope_name, rec.event_id)] =
            a[0];
        return {};
    }
    if (tx.op == "result_aggregate") {
        if (a.size() < 2) return invalid("bad argument count");
        ResultRecord rec;
        try {
            rec = ResultRecord::from_transport(a[0]);
        } catch (const Error& e) {
            return invalid(e.what());
        }
        if (rec.scope != Scope::Canton && rec.scope != Scope::Federal) {
            return invalid("aggregate scope must be canton or federal");
        }
        if (rec.submitter != tx.submitter) return invalid("submitter mismatch");
        if (!record_signature_ok(pki, rec)) return invalid("record signature invalid");
        if (ChaincodeResult rc = validate_counts(rec); !rc.ok) return rc;
        auto n = parse_u64(a[1]);
        if (!n || a.size() != 2 + *n) return invalid("child count mismatch");
        Scope child_scope = rec.scope == Scope::Canton ? Scope::Municipality : Scope::Canton;
        std::map<std::string, std::int64_t> sum;
        std::int64_t electorate = 0;
        for (std::uint64_t i = 0; i < *n; ++i) {
            ResultRecord child;
            try {
                child = ResultRecord::from_transport(a[2 + i]);
            } catch (const Error& e) {
                return invalid(e.what());
            }
            if (child.scope != child_scope) return invalid("child scope mismatch");
            if (child.event_id != rec.event_id) return invalid("child event mismatch");
            if (!record_signature_ok(pki, child)) return invalid("child signature invalid");
            for (const auto& [choice, count] : child.counts) sum[choice] += count;
            electorate += child.electorate_size;
        }
        // The contract enforces correct accumulation: a forged aggregate
        // cannot become valid state.
        if (sum != rec.counts) return invalid("aggregate sum mismatch");
        if (electorate != rec.electorate_size) return invalid("aggregate electorate mismatch");
        state[ResultPublication::result_state_key(rec.scope, rec.scope_name, rec.event_id)] =
            a[0];
        return {};
    }
    if (tx.op == "recount_request") {
        if (a.size() < 4) return invalid("bad argument count");
        if (a[0] != tx.submitter) return invalid("submitter mismatch");
        const Authority* canton = pki.find(a[0]);
        if (!canton || canton->role != Role::Canton) return invalid("recount issuer not a canton");
        std::vector<std::string> reasons(a.begin() + 3, a.end());
        state["recount/" + a[1] + "/" + a[2]] = join(reasons, ",");
        return {};
    }
    if (tx.op == "destruction_command") {
        if (a.size() != 3) return invalid("bad argument count");
        if (a[0] != tx.submitter) return invalid("submitter mismatch");
        const Authority* issuer = pki.find(a[0]);
        if (!issuer ||
            (issuer->role != Role::Confederation && issuer->role != Role::Canton)) {
            return invalid("destruction issuer not authorized");
        }
        if (!is_hex_digest(a[2])) return invalid("malformed federal digest");
        state[ResultPublication::destruction_state_key(a[1])] = a[0] + " " + a[2];
        return {};
    }
    return invalid("unknown RP operation " + tx.op);
}

Simulation::Simulation(std::uint64_t seed, TopologyConfig config)
    : seed_(seed), config_(std::move(config)) {
    pki_ = std::make_unique<Pki>(seed_);

    for (const TopologyConfig::AuthoritySpec& spec : config_.authorities) {
        pki_->create_authority(spec.name, spec.role, spec.parent);
        if (spec.role == Role::Esp && esp_.empty()) esp_ = spec.name;
        if (spec.role == Role::SwissPost) post_ = spec.name;
    }
    // Two peers per participant for fault tolerance, plus one transaction
    // key and one publication key per authority.
    for (const TopologyConfig::AuthoritySpec& spec : config_.authorities) {
        for (int p = 0; p < config_.peers_per_authority; ++p) {
            pki_->issue_certificate(spec.name, spec.name + "/peer-" + std::to_string(p),
                                    KeyPurpose::PeerIdentity);
        }
        pki_->issue_certificate(spec.name, spec.name + "/tx", KeyPurpose::TransactionSigning);
        pki_->issue_certificate(spec.name, spec.name + "/pub", KeyPurpose::Publication);
    }

    ConsensusPolicy policy;
    policy.ordering_members = config_.government_authorities();
    ledger_ = std::make_unique<Ledger>(*pki_, policy);
    ledger_->register_handler(Chaincode::CM, cm_chaincode);
    ledger_->register_handler(Chaincode::RP,
                              [this](WorldState& state, const SignedTransaction& tx) {
                                  return rp_chaincode(*pki_, state, tx);
                              });

    for (const TopologyConfig::ChannelSpec& spec : config_.channels) {
        ledger_->create_channel(spec.id, spec.members, spec.chaincodes);
        if (spec.kind == "federal") {
            channel_map_.federal = spec.id;
        } else if (spec.kind == "external") {
            channel_map_.external = spec.id;
        } else if (spec.kind == "cantonal") {
            channel_map_.cantonal[spec.canton] = spec.id;
        }
    }

    privdata_ = std::make_unique<PrivateData>(*pki_, *ledger_, clock_, corpus_);
    citizens_ = std::make_unique<CitizenRegistry>(*pki_, *ledger_, *privdata_, clock_,
                                                  channel_map_, corpus_);
    for (const TopologyConfig::AuthoritySpec& spec : config_.authorities) {
        if (spec.role == Role::Municipality) citizens_->register_municipality(spec.name);
    }

    registers_ = std::make_unique<ElectoralRegisterModule>(seed_, *pki_, *ledger_, *privdata_,
                                                           *citizens_, clock_, channel_map_);
    artifacts_ = std::make_unique<ArtifactPipeline>(*pki_, *ledger_, *registers_, clock_,
                                                    channel_map_, esp_, post_);
    results_ = std::make_unique<ResultPublication>(*pki_, *ledger_, *registers_, *artifacts_,
                                                   clock_, channel_map_);

    public_env_ = std::make_unique<PublicEnv>(*pki_, *ledger_, channel_map_, corpus_,
                                              config_.public_options,
                                              config_.government_authorities());
    registers_->attach_public_env(public_env_.get());
    results_->attach_public_env(public_env_.get());

    // Genesis state is committed; the constructor ends on a step boundary.
    end_step();
}

void Simulation::end_step() {
    for (const std::string& id : ledger_->channel_ids()) {
        if (!ledger_->channel(id).pending.empty()) {
            ledger_->cut_block(id, ledger_->scheduled_orderer(id));
        }
    }
    public_env_->tick();
    ++clock_.tick;
}

std::vector<std::string> Simulation::municipalities() const {
    std::vector<std::string> out;
    for (const TopologyConfig::AuthoritySpec& a : config_.authorities) {
        if (a.role == Role::Municipality) out.push_back(a.name);
    }
    return out;
}

std::vector<std::string> Simulation::cantons() const {
    std::vector<std::string> out;
    for (const TopologyConfig::AuthoritySpec& a : config_.authorities) {
        if (a.role == Role::Canton) out.push_back(a.name);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> Simulation::register_keys() const {
    return registers_->register_keys();
}

}  // namespace proverum
