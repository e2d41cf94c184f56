// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/privdata.hpp"

#include "proverum/errors.hpp"
#include "proverum/hash.hpp"

namespace proverum {

void SensitiveCorpus::add(std::string value) {
    if (!value.empty()) values_.insert(std::move(value));
}

std::vector<std::string> SensitiveCorpus::hits(ByteView haystack) const {
    std::vector<std::string> found;
    for (const std::string& needle : values_) {
        if (contains_bytes(haystack, as_view(needle))) found.push_back(needle);
    }
    return found;
}

PrivateData::PrivateData(const Pki& pki, Ledger& ledger, const Clock& clock,
                         SensitiveCorpus& corpus)
    : pki_(pki), ledger_(ledger), clock_(clock), corpus_(corpus) {}

void PrivateData::create_collection(const std::string& collection_id,
                                    const std::set<std::string>& authorized_members) {
    Collection col;
    col.authorized = authorized_members;
    for (const std::string& m : authorized_members) col.stores[m] = {};
    collections_[collection_id] = std::move(col);
}

std::string PrivateData::state_key(const std::string& collection_id, const std::string& key) {
    return "priv/" + collection_id + "/" + key;
}

PrivateData::Collection& PrivateData::authorized_collection(const std::string& caller,
                                                            const std::string& collection_id) {
    auto it = collections_.find(collection_id);
    if (it == collections_.end()) throw Error(Errc::UnknownKey, "collection " + collection_id);
    if (!it->second.authorized.contains(caller)) {
        throw Error(Errc::NotAuthorized, caller + " on " + collection_id);
    }
    return it->second;
}

const PrivateData::Collection& PrivateData::authorized_collection(
    const std::string& caller, const std::string& collection_id) const {
    return const_cast<PrivateData*>(this)->authorized_collection(caller, collection_id);
}

PutReceipt PrivateData::put_private(const std::string& caller, const std::string& collection_id,
                                    const std::string& key, Bytes value,
                                    const std::string& channel) {
    Collection& col = authorized_collection(caller, collection_id);
    Hash32 digest = sha256(as_view(value));
    corpus_.add(std::string(reinterpret_cast<const char*>(value.data()), value.size()));
    for (const std::string& m : col.authorized) {
        col.stores[m][key] = value;  // synchronous gossip to all authorized peers
    }
    SignedTransaction tx = SignedTransaction::make(
        pki_.transaction_key(caller), caller, Chaincode::CM, "priv_digest",
        {collection_id, key, to_hex(digest)}, clock_.tick);
    TxReceipt receipt = ledger_.submit(channel, std::move(tx));
    if (!receipt.accepted) throw Error(Errc::NotAuthorized, "digest tx rejected: " + receipt.reason);
    return PutReceipt{digest, receipt.tx_id};
}

bool PrivateData::verify_private(const std::string& caller, const std::string& collection_id,
                                 const std::string& key, const std::string& channel) const {
    const Collection& col = authorized_collection(caller, collection_id);
    auto member_store = col.stores.find(caller);
    auto value = member_store->second.find(key);
    auto on_chain =
        ledger_.query_state(channel, Chaincode::CM, state_key(collection_id, key), caller);
    if (!on_chain) throw Error(Errc::NoOnChainDigest, key);
    if (value == member_store->second.end()) return false;
    return to_hex(sha256(as_view(value->second))) == *on_chain;
}

PurgeReceipt PrivateData::purge_private(const std::string& caller,
                                        const std::string& collection_id, const std::string& key,
                                        const std::string& channel) {
    Collection& col = authorized_collection(caller, collection_id);
    auto& store = col.stores[caller];
    auto it = store.find(key);
    if (it == store.end()) throw Error(Errc::UnknownKey, key);
    Hash32 last_digest = sha256(as_view(it->second));
    store.erase(it);
    // The historical on-chain digest stays; the marker only records the act.
    SignedTransaction tx = SignedTransaction::make(
        pki_.transaction_key(caller), caller, Chaincode::CM, "priv_purge",
        {collection_id, key, to_hex(last_digest)}, clock_.tick);
    TxReceipt receipt = ledger_.submit(channel, std::move(tx));
    if (!receipt.accepted) throw Error(Errc::NotAuthorized, "purge tx rejected: " + receipt.reason);
    return PurgeReceipt{key, receipt.tx_id};
}

const Bytes* PrivateData::read(const std::string& caller, const std::string& collection_id,
                               const std::string& key) const {
    const Collection& col = authorized_collection(caller, collection_id);
    auto member_store = col.stores.find(caller);
    auto it = member_store->second.find(key);
    return it == member_store->second.end() ? nullptr : &it->second;
}

std::vector<std::string> PrivateData::keys(const std::string& caller,
                                           const std::string& collection_id) const {
    const Collection& col = authorized_collection(caller, collection_id);
    std::vector<std::string> out;
    for (const auto& [k, _] : col.stores.at(caller)) out.push_back(k);
    return out;
}

bool PrivateData::has_collection(const std::string& collection_id) const {
    return collections_.contains(collection_id);
}

void PrivateData::tamper(const std::string& member, const std::string& collection_id,
                         const std::string& key, std::size_t byte_index, std::uint8_t xor_mask) {
    auto it = collections_.find(collection_id);
    if (it == collections_.end()) throw Error(Errc::UnknownKey, "collection " + collection_id);
    auto& store = it->second.stores[member];
    auto entry = store.find(key);
    if (entry == store.end()) throw Error(Errc::UnknownKey, key);
    entry->second[byte_index % entry->second.size()] ^= xor_mask;
}

}  // namespace proverum
