// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/public_env.hpp"

#include <algorithm>
#include <cstdlib>

#include "proverum/electoral_register.hpp"
#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"
#include "proverum/hash.hpp"
#include "proverum/merkle.hpp"
#include "proverum/result_record.hpp"
#include "proverum/strings.hpp"

namespace proverum {

std::string_view to_string(PublicationKind kind) {
    switch (kind) {
        case PublicationKind::RegisterDigest: return "register-digest";
        case PublicationKind::MerkleRoot: return "merkle-root";
        case PublicationKind::PreliminaryResult: return "preliminary-result";
        case PublicationKind::FederalResult: return "federal-result";
        case PublicationKind::BlacklistDigest: return "blacklist-digest";
    }
    return "?";
}

std::optional<PublicationKind> publication_kind_from_string(std::string_view token) {
    if (token == "register-digest") return PublicationKind::RegisterDigest;
    if (token == "merkle-root") return PublicationKind::MerkleRoot;
    if (token == "preliminary-result") return PublicationKind::PreliminaryResult;
    if (token == "federal-result") return PublicationKind::FederalResult;
    if (token == "blacklist-digest") return PublicationKind::BlacklistDigest;
    return std::nullopt;
}

Bytes PublicationRecord::to_be_signed() const {
    CanonicalWriter w;
    w.field(to_string(kind));
    w.field(payload);
    w.field(source_authority);
    w.field(source_channel_tx_id);
    return w.take();
}

std::string PublicationRecord::to_line() const {
    return std::string(to_string(kind)) + " " + payload + " " + source_authority + " " +
           to_hex(ByteView{source_signature.bytes.data(), source_signature.bytes.size()}) + " " +
           source_channel_tx_id;
}

Bytes PoABlock::canonical_content() const {
    CanonicalWriter w;
    w.field_u64(height);
    w.field_hash(prev_hash);
    w.field_u64(records.size());
    for (const PublicationRecord& r : records) {
        Bytes tbs = r.to_be_signed();
        w.field(std::string_view{reinterpret_cast<const char*>(tbs.data()), tbs.size()});
        w.field_hex(
            ByteView{r.source_signature.bytes.data(), r.source_signature.bytes.size()});
    }
    w.field(producer);
    return w.take();
}

std::string PublicVerificationReport::summary() const {
    std::string out;
    for (const PublicCheck& c : checks) {
        out += c.name;
        out += c.ok ? ": ok" : ": FAIL";
        if (!c.detail.empty()) out += " (" + c.detail + ")";
        out += "\n";
    }
    return out;
}

PublicEnv::PublicEnv(const Pki& pki, const Ledger& ledger, const ChannelMap& channels,
                     const SensitiveCorpus& corpus, std::set<int> options,
                     std::vector<std::string> poa_producers)
    : pki_(pki),
      ledger_(ledger),
      channels_(channels),
      corpus_(corpus),
      options_(std::move(options)),
      poa_producers_(std::move(poa_producers)) {
    std::sort(poa_producers_.begin(), poa_producers_.end());
}

PublicationReceipt PublicEnv::publish(const PublicationRecord& record) {
    // Gatekeeper: the exchange interface refuses anything carrying private
    // values out of the private environment.
    std::vector<std::string> leaks = corpus_.hits(as_view(record.payload));
    if (!leaks.empty()) {
        throw Error(Errc::GatekeeperRejection,
                    std::to_string(leaks.size()) + " private value(s) in payload");
    }
    const Certificate* cert =
        pki_.find_issued(record.source_authority, record.source_authority + "/pub");
    Bytes tbs = record.to_be_signed();
    if (!cert || !Pki::verify(*cert, as_view(tbs), record.source_signature)) {
        throw Error(Errc::BadSourceSignature, record.source_authority);
    }

    PublicationReceipt receipt;
    receipt.ok = true;
    if (options_.contains(1)) {
        CanonicalWriter w;
        w.field_u64(sink_.size());
        w.field(record.payload);
        receipt.external_tx_id = to_hex(sha256(as_view(w.bytes())));
        sink_.emplace_back(receipt.external_tx_id, record);
    }
    if (options_.contains(2)) poa_pending_.push_back(record);
    if (options_.contains(3)) indexed_.push_back(record);
    return receipt;
}

PublicationReceipt PublicEnv::publish_from(const std::string& source, PublicationKind kind,
                                           std::string payload,
                                           std::string source_channel_tx_id) {
    PublicationRecord record;
    record.kind = kind;
    record.payload = std::move(payload);
    record.source_authority = source;
    record.source_channel_tx_id = std::move(source_channel_tx_id);
    record.source_signature =
        Pki::sign(pki_.keypair(source + "/pub"), as_view(record.to_be_signed()));
    return publish(record);
}

void PublicEnv::tick() {
    if (!options_.contains(2) || poa_pending_.empty()) return;
    PoABlock block;
    block.height = poa_blocks_.size();
    block.prev_hash = poa_blocks_.empty() ? Hash32::zero() : poa_blocks_.back().block_hash;
    block.records = std::move(poa_pending_);
    poa_pending_.clear();
    block.producer = poa_producers_[block.height % poa_producers_.size()];
    block.block_hash = sha256(as_view(block.canonical_content()));
    block.producer_signature =
        Pki::sign(pki_.keypair(block.producer + "/pub"), as_view(block.canonical_content()));
    poa_blocks_.push_back(std::move(block));
}

std::vector<PublicationRecord> PublicEnv::read_records(PublicationKind kind) const {
    std::vector<PublicationRecord> out;
    for (const PublicationRecord& r : read_all()) {
        if (r.kind == kind) out.push_back(r);
    }
    return out;
}

std::vector<PublicationRecord> PublicEnv::read_all() const {
    if (options_.contains(3)) return indexed_;
    if (options_.contains(2)) {
        std::vector<PublicationRecord> out;
        for (const PoABlock& b : poa_blocks_) {
            out.insert(out.end(), b.records.begin(), b.records.end());
        }
        return out;
    }
    std::vector<PublicationRecord> out;
    for (const auto& [_, r] : sink_) out.push_back(r);
    return out;
}

std::optional<std::string> PublicEnv::reception_status(const std::string& municipality,
                                                       const std::string& event_id,
                                                       const Hash32& commitment) const {
    auto log = ledger_.query_state_granted(channels_.external, Chaincode::CM,
                                           "reception/" + municipality + "/" + event_id);
    if (!log) return std::nullopt;
    std::string hex = to_hex(commitment);
    for (const std::string& line : split(*log, '\n')) {
        std::vector<std::string> parts = split_ws(line);
        if (parts.size() >= 3 && parts[1] == hex) {
            return line;
        }
    }
    return std::nullopt;
}

PublicView PublicEnv::snapshot() const {
    PublicView view;
    view.options = options_;
    view.sink = sink_;
    view.poa_blocks = poa_blocks_;
    view.poa_producers = poa_producers_;
    view.indexed = indexed_;
    for (const auto& [name, authority] : pki_.directory()) {
        for (const Certificate& c : authority.issued) {
            if (c.purpose == KeyPurpose::Publication) view.publication_certs[name] = c;
        }
    }
    return view;
}

std::string PublicEnv::export_records_text() const {
    std::string out;
    for (const PublicationRecord& r : read_all()) {
        out += r.to_line();
        out += '\n';
    }
    return out;
}

Bytes PublicEnv::public_bytes() const {
    std::string text;
    for (const auto& [id, r] : sink_) text += id + " " + r.to_line() + "\n";
    for (const PoABlock& b : poa_blocks_) {
        Bytes c = b.canonical_content();
        text.append(reinterpret_cast<const char*>(c.data()), c.size());
    }
    for (const PublicationRecord& r : indexed_) text += r.to_line() + "\n";
    return Bytes(text.begin(), text.end());
}

bool PublicEnv::options_consistent() const {
    if (!options_.contains(1) || !options_.contains(2)) return true;
    std::vector<PublicationRecord> on_sink;
    for (const auto& [_, r] : sink_) on_sink.push_back(r);
    std::vector<PublicationRecord> on_poa;
    for (const PoABlock& b : poa_blocks_) {
        on_poa.insert(on_poa.end(), b.records.begin(), b.records.end());
    }
    for (const PublicationRecord& r : poa_pending_) on_poa.push_back(r);
    if (on_sink.size() != on_poa.size()) return false;
    auto line_multiset = [](const std::vector<PublicationRecord>& records) {
        std::multiset<std::string> out;
        for (const PublicationRecord& r : records) out.insert(r.to_line());
        return out;
    };
    return line_multiset(on_sink) == line_multiset(on_poa);
}

// --- public verifier ---------------------------------------------------------

namespace {
const std::vector<PublicationRecord>* pick_records_source(const PublicView& view,
                                                          std::vector<PublicationRecord>& scratch) {
    if (view.options.contains(2)) {
        for (const PoABlock& b : view.poa_blocks) {
            scratch.insert(scratch.end(), b.records.begin(), b.records.end());
        }
        return &scratch;
    }
    if (view.options.contains(1)) {
        for (const auto& [_, r] : view.sink) scratch.push_back(r);
        return &scratch;
    }
    return &view.indexed;
}

struct PayloadRef {
    std::string context;  // "<mun>/<event>/vN" for digest kinds
    std::string value;
};

std::optional<PayloadRef> split_payload(const std::string& payload) {
    std::size_t eq = payload.find('=');
    if (eq == std::string::npos) return std::nullopt;
    return PayloadRef{payload.substr(0, eq), payload.substr(eq + 1)};
}

/// Latest-version digest payload for (municipality, event), by version number.
std::optional<std::string> latest_digest(const std::vector<PublicationRecord>& records,
                                         PublicationKind kind, const std::string& municipality,
                                         const std::string& event_id) {
    std::optional<std::string> best;
    std::uint64_t best_version = 0;
    std::string prefix = municipality + "/" + event_id + "/v";
    for (const PublicationRecord& r : records) {
        if (r.kind != kind) continue;
        auto ref = split_payload(r.payload);
        if (!ref || !ref->context.starts_with(prefix)) continue;
        std::uint64_t version = std::strtoull(ref->context.c_str() + prefix.size(), nullptr, 10);
        if (!best || version >= best_version) {
            best = ref->value;
            best_version = version;
        }
    }
    return best;
}
}  // namespace

PublicVerificationReport public_verify(const PublicView& view, const std::string& event_id) {
    PublicVerificationReport report;
    auto add = [&](PublicCheck check) {
        if (!check.ok) report.ok = false;
        report.checks.push_back(std::move(check));
    };

    std::vector<PublicationRecord> scratch;
    const std::vector<PublicationRecord>& records = *pick_records_source(view, scratch);

    // (a) register digests match a recomputation from the public export.
    for (const auto& [key, text] : view.register_exports) {
        const auto& [municipality, export_event] = key;
        if (export_event != event_id) continue;
        PublicCheck check{"register-recompute/" + municipality, true, ""};
        try {
            ParsedRegisterExport parsed = parse_register_export(text);
            Hash32 digest = register_list_digest(parsed.commitments);
            Hash32 root = merkle::root(parsed.commitments);
            if (digest != parsed.list_digest || root != parsed.merkle_root) {
                check.ok = false;
                check.detail = "export footer does not match its own commitment list";
            } else {
                auto published_digest =
                    latest_digest(records, PublicationKind::RegisterDigest, municipality, event_id);
                auto published_root =
                    latest_digest(records, PublicationKind::MerkleRoot, municipality, event_id);
                if (!published_digest || !published_root) {
                    check.ok = false;
                    check.detail = "no published digest for this register";
                } else if (*published_digest != to_hex(digest) ||
                           *published_root != to_hex(root)) {
                    check.ok = false;
                    check.detail = "published digest differs from recomputation";
                }
            }
        } catch (const Error& e) {
            check.ok = false;
            check.detail = e.what();
        }
        add(std::move(check));
    }

    // (b) federal result equals the sum of published cantonal results.
    {
        PublicCheck check{"result-sum", true, ""};
        std::optional<ResultRecord> federal;
        std::map<std::string, ResultRecord> cantonal;
        try {
            for (const PublicationRecord& r : records) {
                if (r.kind == PublicationKind::FederalResult) {
                    ResultRecord rec = ResultRecord::from_transport(r.payload);
                    if (rec.event_id == event_id) federal = rec;
                } else if (r.kind == PublicationKind::PreliminaryResult) {
                    ResultRecord rec = ResultRecord::from_transport(r.payload);
                    if (rec.event_id == event_id && rec.scope == Scope::Canton) {
                        cantonal[rec.scope_name] = rec;  // latest publication wins
                    }
                }
            }
            if (!federal && cantonal.empty()) {
                check.detail = "no results published";
            } else if (!federal) {
                check.ok = false;
                check.detail = "cantonal results published without a federal tally";
            } else {
                std::map<std::string, std::int64_t> sum;
                std::int64_t electorate = 0;
                for (const auto& [_, rec] : cantonal) {
                    for (const auto& [choice, n] : rec.counts) sum[choice] += n;
                    electorate += rec.electorate_size;
                }
                if (sum != federal->counts || electorate != federal->electorate_size) {
                    check.ok = false;
                    check.detail = "federal tally differs from cantonal sum";
                }
            }
        } catch (const Error& e) {
            check.ok = false;
            check.detail = e.what();
        }
        add(std::move(check));
    }

    // (c) every record's source signature verifies.
    {
        PublicCheck check{"source-signatures", true, ""};
        std::size_t checked = 0;
        for (const PublicationRecord& r : records) {
            auto cert = view.publication_certs.find(r.source_authority);
            Bytes tbs = r.to_be_signed();
            if (cert == view.publication_certs.end() ||
                !Pki::verify(cert->second, as_view(tbs), r.source_signature)) {
                check.ok = false;
                check.detail = "bad signature from " + r.source_authority;
                break;
            }
            ++checked;
        }
        if (check.ok) check.detail = std::to_string(checked) + " signatures";
        add(std::move(check));
    }

    // (d) PoA chain hash links verify end to end.
    if (view.options.contains(2)) {
        PublicCheck check{"poa-chain", true, ""};
        for (std::size_t i = 0; i < view.poa_blocks.size(); ++i) {
            const PoABlock& b = view.poa_blocks[i];
            Hash32 expected_prev =
                i == 0 ? Hash32::zero() : view.poa_blocks[i - 1].block_hash;
            bool producer_ok =
                !view.poa_producers.empty() &&
                b.producer == view.poa_producers[b.height % view.poa_producers.size()];
            auto cert = view.publication_certs.find(b.producer);
            bool sig_ok = cert != view.publication_certs.end() &&
                          Pki::verify(cert->second, as_view(b.canonical_content()),
                                      b.producer_signature);
            if (b.height != i || b.prev_hash != expected_prev ||
                b.block_hash != sha256(as_view(b.canonical_content())) || !producer_ok ||
                !sig_ok) {
                check.ok = false;
                check.detail = "block " + std::to_string(i) + " invalid";
                break;
            }
        }
        add(std::move(check));
    }

    // Options 1 and 2, when both enabled, must carry the same record multiset.
    if (view.options.contains(1) && view.options.contains(2)) {
        PublicCheck check{"option-consistency", true, ""};
        std::multiset<std::string> on_sink;
        for (const auto& [_, r] : view.sink) on_sink.insert(r.to_line());
        std::multiset<std::string> on_poa;
        for (const PoABlock& b : view.poa_blocks) {
            for (const PublicationRecord& r : b.records) on_poa.insert(r.to_line());
        }
        if (on_sink != on_poa) {
            check.ok = false;
            check.detail = "record multisets differ between option 1 and option 2";
        }
        add(std::move(check));
    }

    // (e) eligibility verifiability from public artifacts.
    for (const auto& [key, log] : view.reception_logs) {
        const auto& [municipality, log_event] = key;
        if (log_event != event_id) continue;
        auto reg = view.register_exports.find(key);
        PublicCheck check{"eligibility/" + municipality, true, ""};
        if (reg == view.register_exports.end()) {
            check.ok = false;
            check.detail = "reception log without a public register export";
        } else {
            check = verify_eligibility_public(reg->second, log);
            check.name = "eligibility/" + municipality;
        }
        add(std::move(check));
    }

    return report;
}

PublicCheck verify_eligibility_public(const std::string& register_export,
                                      const std::vector<std::string>& reception_log) {
    PublicCheck check{"eligibility", true, ""};
    std::set<std::string> commitments;
    try {
        ParsedRegisterExport parsed = parse_register_export(register_export);
        for (const Hash32& c : parsed.commitments) commitments.insert(to_hex(c));
    } catch (const Error& e) {
        return PublicCheck{"eligibility", false, e.what()};
    }
    std::map<std::string, int> counted;
    for (const std::string& line : reception_log) {
        std::vector<std::string> parts = split_ws(line);
        if (parts.size() < 4) continue;
        const std::string& commitment = parts[1];
        const std::string& decision = parts[2];
        if (decision != "Accepted") continue;
        if (!commitments.contains(commitment)) {
            return PublicCheck{"eligibility", false,
                               "counted envelope outside the register: " + commitment};
        }
        if (++counted[commitment] > 1) {
            return PublicCheck{"eligibility", false, "commitment counted twice: " + commitment};
        }
    }
    check.detail = std::to_string(counted.size()) + " counted, all in register, none twice";
    return check;
}

}  // namespace proverum
