// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/ledger.hpp"

#include <algorithm>

#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"
#include "proverum/hash.hpp"

namespace proverum {

std::string_view to_string(Chaincode cc) { return cc == Chaincode::CM ? "CM" : "RP"; }

std::optional<Chaincode> chaincode_from_string(std::string_view token) {
    if (token == "CM") return Chaincode::CM;
    if (token == "RP") return Chaincode::RP;
    return std::nullopt;
}

Bytes SignedTransaction::canonical_payload() const {
    CanonicalWriter w;
    w.field(submitter);
    w.field(to_string(chaincode));
    w.field(op);
    w.field_u64(args.size());
    for (const std::string& a : args) w.field(a);
    w.field_u64(timestamp);
    return w.take();
}

SignedTransaction SignedTransaction::make(const KeyPair& key, std::string submitter, Chaincode cc,
                                          std::string op, std::vector<std::string> args,
                                          std::uint64_t timestamp) {
    SignedTransaction tx;
    tx.submitter = std::move(submitter);
    tx.chaincode = cc;
    tx.op = std::move(op);
    tx.args = std::move(args);
    tx.timestamp = timestamp;
    Bytes payload = tx.canonical_payload();
    tx.tx_id = sha256(as_view(payload));
    tx.signature = Pki::sign(key, as_view(payload));
    return tx;
}

Bytes Block::canonical_content() const {
    CanonicalWriter w;
    w.field_u64(height);
    w.field_hash(prev_hash);
    w.field_u64(txs.size());
    for (const CommittedTx& t : txs) {
        w.field_hash(t.tx.tx_id);
        w.field_u64(t.valid ? 1 : 0);
        w.field(t.validation_error);
    }
    w.field(orderer);
    return w.take();
}

Ledger::Ledger(const Pki& pki, ConsensusPolicy policy) : pki_(pki), policy_(std::move(policy)) {
    std::sort(policy_.ordering_members.begin(), policy_.ordering_members.end());
}

namespace {
const Certificate* tx_cert(const Pki& pki, const std::string& authority) {
    return pki.find_issued(authority, authority + "/tx");
}
}  // namespace

Channel& Ledger::create_channel(const std::string& id, const std::set<std::string>& members,
                                const std::set<Chaincode>& chaincodes) {
    if (channels_.contains(id)) throw Error(Errc::UnknownChannel, "channel exists: " + id);
    if (members.empty()) throw Error(Errc::UnknownMember, "channel needs members: " + id);
    for (const std::string& m : members) {
        if (!pki_.exists(m)) throw Error(Errc::UnknownMember, m);
    }
    if (chaincodes.contains(Chaincode::RP)) {
        for (const std::string& m : members) {
            if (!is_government(pki_.get(m).role)) {
                throw Error(Errc::IncompatibleChaincode,
                            "RP chaincode on channel with non-government member " + m);
            }
        }
    }

    Channel ch;
    ch.id = id;
    ch.members = members;
    ch.chaincodes = chaincodes;
    for (Chaincode cc : chaincodes) ch.world_states[cc] = {};
    for (const std::string& m : policy_.ordering_members) {
        if (members.contains(m)) ch.ordering_members.push_back(m);
    }
    if (ch.ordering_members.empty()) {
        throw Error(Errc::UnknownMember, "channel has no consortium member: " + id);
    }

    // Genesis block: empty, zero prev hash, first scheduled orderer.
    Block genesis;
    genesis.height = 0;
    genesis.prev_hash = Hash32::zero();
    genesis.orderer = ch.ordering_members[0];
    genesis.block_hash = sha256(as_view(genesis.canonical_content()));
    genesis.orderer_signature =
        Pki::sign(pki_.transaction_key(genesis.orderer), as_view(genesis.canonical_content()));
    ch.blocks.push_back(std::move(genesis));

    auto [it, _] = channels_.emplace(id, std::move(ch));
    channel_order_.push_back(id);
    return it->second;
}

TxReceipt Ledger::submit(const std::string& channel_id, SignedTransaction tx) {
    Channel& ch = channel_mut(channel_id);
    TxReceipt receipt;
    receipt.tx_id = tx.tx_id;
    if (!ch.members.contains(tx.submitter)) {
        receipt.accepted = false;
        receipt.reason = "NotAMember";
        return receipt;
    }
    if (!ch.chaincodes.contains(tx.chaincode)) {
        receipt.accepted = false;
        receipt.reason = "IncompatibleChaincode";
        return receipt;
    }
    const Certificate* cert = tx_cert(pki_, tx.submitter);
    Bytes payload = tx.canonical_payload();
    if (tx.tx_id != sha256(as_view(payload)) || !cert ||
        !Pki::verify(*cert, as_view(payload), tx.signature)) {
        receipt.accepted = false;
        receipt.reason = "BadSignature";
        return receipt;
    }
    ch.pending.push_back(std::move(tx));
    receipt.accepted = true;
    receipt.reason = "pending";
    return receipt;
}

std::string Ledger::scheduled_orderer(const std::string& channel_id) const {
    const Channel& ch = channel(channel_id);
    return ch.ordering_members[ch.blocks.size() % ch.ordering_members.size()];
}

ChaincodeResult Ledger::run_handler(Chaincode cc, WorldState& state,
                                    const SignedTransaction& tx) const {
    auto it = handlers_.find(cc);
    if (it == handlers_.end()) return {};  // no handler registered: accept, no state change
    WorldState scratch = state;
    ChaincodeResult rc = it->second(scratch, tx);
    if (rc.ok) state = std::move(scratch);
    return rc;
}

const Block& Ledger::cut_block(const std::string& channel_id, const std::string& caller) {
    Channel& ch = channel_mut(channel_id);
    if (ch.pending.empty()) throw Error(Errc::EmptyPool, channel_id);
    const std::string scheduled = scheduled_orderer(channel_id);
    if (caller != scheduled) {
        throw Error(Errc::WrongOrderer, caller + " (scheduled: " + scheduled + ")");
    }

    // Deterministic ordering: (timestamp, txId) regardless of arrival order.
    std::vector<SignedTransaction> pool = std::move(ch.pending);
    ch.pending.clear();
    std::stable_sort(pool.begin(), pool.end(),
                     [](const SignedTransaction& a, const SignedTransaction& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.tx_id.bytes < b.tx_id.bytes;
                     });

    Block b;
    b.height = ch.blocks.size();
    b.prev_hash = ch.blocks.back().block_hash;
    b.orderer = caller;
    for (SignedTransaction& tx : pool) {
        CommittedTx ct;
        ChaincodeResult rc = run_handler(tx.chaincode, ch.world_states[tx.chaincode], tx);
        ct.valid = rc.ok;
        ct.validation_error = rc.error;
        ct.tx = std::move(tx);
        b.txs.push_back(std::move(ct));
    }
    b.block_hash = sha256(as_view(b.canonical_content()));
    b.orderer_signature =
        Pki::sign(pki_.transaction_key(caller), as_view(b.canonical_content()));
    ch.blocks.push_back(std::move(b));
    return ch.blocks.back();
}

VerificationReport Ledger::verify_block(const Channel& ch, const Block& b,
                                        std::size_t index) const {
    auto bad = [&](const std::string& why) {
        return VerificationReport{false, b.height, "height " + std::to_string(b.height) + ": " + why};
    };
    if (b.height != index) return bad("height out of sequence");
    Hash32 expected_prev = index == 0 ? Hash32::zero() : ch.blocks[index - 1].block_hash;
    if (b.prev_hash != expected_prev) return bad("prev hash mismatch");
    if (b.block_hash != sha256(as_view(b.canonical_content()))) return bad("block hash mismatch");
    const std::string expected_orderer =
        ch.ordering_members[index % ch.ordering_members.size()];
    if (b.orderer != expected_orderer) return bad("unexpected orderer " + b.orderer);
    const Certificate* ocert = tx_cert(pki_, b.orderer);
    if (!ocert || !Pki::verify(*ocert, as_view(b.canonical_content()), b.orderer_signature)) {
        return bad("orderer signature invalid");
    }
    for (const CommittedTx& ct : b.txs) {
        Bytes payload = ct.tx.canonical_payload();
        if (ct.tx.tx_id != sha256(as_view(payload))) return bad("tx id mismatch");
        if (!ch.members.contains(ct.tx.submitter)) return bad("tx from non-member");
        const Certificate* cert = tx_cert(pki_, ct.tx.submitter);
        if (!cert || !Pki::verify(*cert, as_view(payload), ct.tx.signature)) {
            return bad("tx signature invalid");
        }
    }
    return {};
}

VerificationReport Ledger::verify_chain(const std::string& channel_id) const {
    const Channel& ch = channel(channel_id);
    for (std::size_t i = 0; i < ch.blocks.size(); ++i) {
        VerificationReport r = verify_block(ch, ch.blocks[i], i);
        if (!r.ok) return r;
    }
    return {true, std::nullopt, std::to_string(ch.blocks.size()) + " blocks ok"};
}

std::optional<std::string> Ledger::query_state(const std::string& channel_id, Chaincode cc,
                                               const std::string& key,
                                               const std::string& caller) const {
    const Channel& ch = channel(channel_id);
    if (!ch.members.contains(caller)) throw Error(Errc::NotAMember, caller + " on " + channel_id);
    return query_state_granted(channel_id, cc, key);
}

std::optional<std::string> Ledger::query_state_granted(const std::string& channel_id, Chaincode cc,
                                                       const std::string& key) const {
    const Channel& ch = channel(channel_id);
    auto ws = ch.world_states.find(cc);
    if (ws == ch.world_states.end()) return std::nullopt;
    auto it = ws->second.find(key);
    if (it == ws->second.end()) return std::nullopt;
    return it->second;
}

VerificationReport Ledger::replay_check(const std::string& channel_id) const {
    const Channel& ch = channel(channel_id);
    std::map<Chaincode, WorldState> replayed;
    for (Chaincode cc : ch.chaincodes) replayed[cc] = {};
    for (const Block& b : ch.blocks) {
        for (const CommittedTx& ct : b.txs) {
            WorldState& state = replayed[ct.tx.chaincode];
            WorldState scratch = state;
            ChaincodeResult rc{};
            auto it = handlers_.find(ct.tx.chaincode);
            if (it != handlers_.end()) rc = it->second(scratch, ct.tx);
            if (rc.ok) state = std::move(scratch);
            if (rc.ok != ct.valid) {
                return {false, b.height,
                        "validity flag divergence at height " + std::to_string(b.height)};
            }
        }
    }
    if (replayed != ch.world_states) {
        return {false, std::nullopt, "world state divergence on " + channel_id};
    }
    return {true, std::nullopt, "replay matches"};
}

void Ledger::register_handler(Chaincode cc, ChaincodeHandler handler) {
    handlers_[cc] = std::move(handler);
}

const Channel& Ledger::channel(const std::string& channel_id) const {
    auto it = channels_.find(channel_id);
    if (it == channels_.end()) throw Error(Errc::UnknownChannel, channel_id);
    return it->second;
}

Channel& Ledger::channel_mut(const std::string& channel_id) {
    auto it = channels_.find(channel_id);
    if (it == channels_.end()) throw Error(Errc::UnknownChannel, channel_id);
    return it->second;
}

bool Ledger::has_channel(const std::string& channel_id) const {
    return channels_.contains(channel_id);
}

std::vector<std::string> Ledger::channel_ids() const { return channel_order_; }

Bytes Ledger::orderer_visible_bytes(const std::string& channel_id) const {
    const Channel& ch = channel(channel_id);
    Bytes out;
    for (const Block& b : ch.blocks) {
        Bytes bb = serialize_block(b);
        out.insert(out.end(), bb.begin(), bb.end());
    }
    for (const SignedTransaction& tx : ch.pending) {
        Bytes payload = tx.canonical_payload();
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

// --- dumps -------------------------------------------------------------------

Bytes serialize_block(const Block& b) {
    CanonicalWriter w;
    w.field_u64(b.height);
    w.field_hash(b.prev_hash);
    w.field_u64(b.txs.size());
    for (const CommittedTx& ct : b.txs) {
        const SignedTransaction& tx = ct.tx;
        w.field(tx.submitter);
        w.field(to_string(tx.chaincode));
        w.field(tx.op);
        w.field_u64(tx.args.size());
        for (const std::string& a : tx.args) w.field(a);
        w.field_u64(tx.timestamp);
        w.field_hash(tx.tx_id);
        w.field(tx.signature.signer);
        w.field_hex(ByteView{tx.signature.bytes.data(), tx.signature.bytes.size()});
        w.field_u64(ct.valid ? 1 : 0);
        w.field(ct.validation_error);
    }
    w.field(b.orderer);
    w.field(b.orderer_signature.signer);
    w.field_hex(ByteView{b.orderer_signature.bytes.data(), b.orderer_signature.bytes.size()});
    w.field_hash(b.block_hash);
    return w.take();
}

namespace {
std::array<std::uint8_t, 64> read_sig64(CanonicalReader& r) {
    Bytes raw = r.field_hex();
    if (raw.size() != 64) throw Error(Errc::EncodingError, "signature must be 64 bytes");
    std::array<std::uint8_t, 64> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

std::uint64_t read_flag(CanonicalReader& r) {
    std::uint64_t v = r.field_u64();
    if (v > 1) throw Error(Errc::EncodingError, "flag must be 0 or 1");
    return v;
}
}  // namespace

Block parse_block(ByteView data) {
    CanonicalReader r(data);
    Block b;
    b.height = r.field_u64();
    b.prev_hash = r.field_hash();
    std::uint64_t ntx = r.field_u64();
    for (std::uint64_t i = 0; i < ntx; ++i) {
        CommittedTx ct;
        SignedTransaction& tx = ct.tx;
        tx.submitter = r.field();
        auto cc = chaincode_from_string(r.field());
        if (!cc) throw Error(Errc::EncodingError, "bad chaincode token");
        tx.chaincode = *cc;
        tx.op = r.field();
        std::uint64_t nargs = r.field_u64();
        for (std::uint64_t k = 0; k < nargs; ++k) tx.args.push_back(r.field());
        tx.timestamp = r.field_u64();
        tx.tx_id = r.field_hash();
        tx.signature.signer = r.field();
        tx.signature.bytes = read_sig64(r);
        ct.valid = read_flag(r) == 1;
        ct.validation_error = r.field();
        b.txs.push_back(std::move(ct));
    }
    b.orderer = r.field();
    b.orderer_signature.signer = r.field();
    b.orderer_signature.bytes = read_sig64(r);
    b.block_hash = r.field_hash();
    r.expect_end();
    return b;
}

namespace {
void write_certificate(CanonicalWriter& w, const Certificate& c) {
    w.field(c.subject);
    w.field_hex(ByteView{c.public_key.bytes.data(), c.public_key.bytes.size()});
    w.field(c.issuer);
    w.field(to_string(c.purpose));
    w.field_hex(ByteView{c.issuer_signature.data(), c.issuer_signature.size()});
}

Certificate read_certificate(CanonicalReader& r) {
    Certificate c;
    c.subject = r.field();
    Bytes pk = r.field_hex();
    if (pk.size() != 32) throw Error(Errc::EncodingError, "public key must be 32 bytes");
    std::copy(pk.begin(), pk.end(), c.public_key.bytes.begin());
    c.issuer = r.field();
    auto purpose = key_purpose_from_string(r.field());
    if (!purpose) throw Error(Errc::EncodingError, "bad key purpose");
    c.purpose = *purpose;
    c.issuer_signature = read_sig64(r);
    return c;
}

constexpr std::string_view kDumpMagic = "PROVERUM-CHANNEL-DUMP-V1";
}  // namespace

Bytes dump_channel(const Channel& ch, const Pki& pki, std::vector<BlockSpan>* spans) {
    CanonicalWriter w;
    w.field(kDumpMagic);
    w.field(ch.id);
    w.field_u64(ch.members.size());
    for (const std::string& m : ch.members) w.field(m);
    w.field_u64(ch.chaincodes.size());
    for (Chaincode cc : ch.chaincodes) w.field(to_string(cc));
    w.field_u64(ch.ordering_members.size());
    for (const std::string& m : ch.ordering_members) w.field(m);

    // Roots plus each member's transaction-signing certificate: everything a
    // memberless verifier needs to re-check the chain.
    w.field_u64(ch.members.size());
    for (const std::string& m : ch.members) {
        write_certificate(w, pki.get(m).root_certificate);
    }
    std::vector<const Certificate*> leafs;
    for (const std::string& m : ch.members) {
        if (const Certificate* c = pki.find_issued(m, m + "/tx")) leafs.push_back(c);
    }
    w.field_u64(leafs.size());
    for (const Certificate* c : leafs) write_certificate(w, *c);

    w.field_u64(ch.blocks.size());
    Bytes out = w.take();
    for (const Block& b : ch.blocks) {
        Bytes bb = serialize_block(b);
        CanonicalWriter bw;
        bw.field(std::string_view{reinterpret_cast<const char*>(bb.data()), bb.size()});
        Bytes framed = bw.take();
        if (spans) {
            // Payload starts after the 4-byte length prefix.
            spans->push_back(BlockSpan{b.height, out.size() + 4, bb.size()});
        }
        out.insert(out.end(), framed.begin(), framed.end());
    }
    return out;
}

ChannelDump parse_channel_dump(ByteView data) {
    CanonicalReader r(data);
    if (r.field() != kDumpMagic) throw Error(Errc::EncodingError, "bad dump magic");
    ChannelDump d;
    d.channel_id = r.field();
    std::uint64_t nmembers = r.field_u64();
    for (std::uint64_t i = 0; i < nmembers; ++i) d.members.push_back(r.field());
    std::uint64_t ncc = r.field_u64();
    for (std::uint64_t i = 0; i < ncc; ++i) {
        auto cc = chaincode_from_string(r.field());
        if (!cc) throw Error(Errc::EncodingError, "bad chaincode token");
        d.chaincodes.push_back(*cc);
    }
    std::uint64_t nord = r.field_u64();
    for (std::uint64_t i = 0; i < nord; ++i) d.ordering_members.push_back(r.field());
    std::uint64_t nroots = r.field_u64();
    for (std::uint64_t i = 0; i < nroots; ++i) {
        Certificate c = read_certificate(r);
        d.roots[c.subject] = c;
    }
    std::uint64_t nleafs = r.field_u64();
    for (std::uint64_t i = 0; i < nleafs; ++i) {
        Certificate c = read_certificate(r);
        d.leaf_certs[c.subject] = c;
    }
    std::uint64_t nblocks = r.field_u64();
    for (std::uint64_t i = 0; i < nblocks; ++i) {
        std::string raw = r.field();
        d.blocks.push_back(parse_block(as_view(raw)));
    }
    r.expect_end();
    return d;
}

VerificationReport verify_dump(const ChannelDump& d) {
    // Certificates first: a verifier with no directory handle anchors trust
    // in the embedded self-signed roots.
    for (const auto& [name, root] : d.roots) {
        Certificate copy = root;
        if (!Pki::verify_certificate_against(copy, d.roots)) {
            return {false, std::nullopt, "root certificate invalid: " + name};
        }
    }
    for (const auto& [key_id, cert] : d.leaf_certs) {
        if (!Pki::verify_certificate_against(cert, d.roots)) {
            return {false, std::nullopt, "leaf certificate invalid: " + key_id};
        }
    }
    if (d.ordering_members.empty()) return {false, std::nullopt, "no ordering members"};

    std::set<std::string> members(d.members.begin(), d.members.end());
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const Block& b = d.blocks[i];
        auto bad = [&](const std::string& why) {
            return VerificationReport{false, b.height,
                                      "height " + std::to_string(b.height) + ": " + why};
        };
        if (b.height != i) return bad("height out of sequence");
        Hash32 expected_prev = i == 0 ? Hash32::zero() : d.blocks[i - 1].block_hash;
        if (b.prev_hash != expected_prev) return bad("prev hash mismatch");
        if (b.block_hash != sha256(as_view(b.canonical_content()))) {
            return bad("block hash mismatch");
        }
        if (b.orderer != d.ordering_members[i % d.ordering_members.size()]) {
            return bad("unexpected orderer " + b.orderer);
        }
        auto ocert = d.leaf_certs.find(b.orderer + "/tx");
        if (ocert == d.leaf_certs.end() ||
            !Pki::verify(ocert->second, as_view(b.canonical_content()), b.orderer_signature)) {
            return bad("orderer signature invalid");
        }
        for (const CommittedTx& ct : b.txs) {
            Bytes payload = ct.tx.canonical_payload();
            if (ct.tx.tx_id != sha256(as_view(payload))) return bad("tx id mismatch");
            if (!members.contains(ct.tx.submitter)) return bad("tx from non-member");
            auto cert = d.leaf_certs.find(ct.tx.submitter + "/tx");
            if (cert == d.leaf_certs.end() ||
                !Pki::verify(cert->second, as_view(payload), ct.tx.signature)) {
                return bad("tx signature invalid");
            }
        }
    }
    return {true, std::nullopt, std::to_string(d.blocks.size()) + " blocks ok"};
}

std::string render_channel_text(const Channel& ch) {
    std::string out = "channel " + ch.id + "\n";
    for (const Block& b : ch.blocks) {
        out += std::to_string(b.height) + " " + to_hex(b.block_hash).substr(0, 12) + " " +
               std::to_string(b.txs.size()) + " " + b.orderer + "\n";
    }
    return out;
}

}  // namespace proverum
