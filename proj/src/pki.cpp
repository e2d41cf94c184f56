// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/pki.hpp"

#include <sodium.h>

#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"

namespace proverum {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::Confederation: return "confederation";
        case Role::Canton: return "canton";
        case Role::Municipality: return "municipality";
        case Role::Esp: return "esp";
        case Role::SwissPost: return "post";
    }
    return "?";
}

std::optional<Role> role_from_string(std::string_view token) {
    if (token == "confederation") return Role::Confederation;
    if (token == "canton") return Role::Canton;
    if (token == "municipality") return Role::Municipality;
    if (token == "esp") return Role::Esp;
    if (token == "post") return Role::SwissPost;
    return std::nullopt;
}

bool is_government(Role role) {
    return role == Role::Confederation || role == Role::Canton || role == Role::Municipality;
}

std::string_view to_string(KeyPurpose purpose) {
    switch (purpose) {
        case KeyPurpose::PeerIdentity: return "peer-identity";
        case KeyPurpose::TransactionSigning: return "transaction-signing";
        case KeyPurpose::Publication: return "publication";
    }
    return "?";
}

std::optional<KeyPurpose> key_purpose_from_string(std::string_view token) {
    if (token == "peer-identity") return KeyPurpose::PeerIdentity;
    if (token == "transaction-signing") return KeyPurpose::TransactionSigning;
    if (token == "publication") return KeyPurpose::Publication;
    return std::nullopt;
}

Bytes Certificate::to_be_signed() const {
    CanonicalWriter w;
    w.field(subject);
    w.field_hex(ByteView{public_key.bytes.data(), public_key.bytes.size()});
    w.field(to_string(purpose));
    return w.take();
}

namespace {
void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("sodium_init failed");
}
}  // namespace

Pki::Pki(std::uint64_t seed) : rng_(seed, "pki") { ensure_sodium(); }

KeyPair Pki::generate_keypair(const std::string& key_id) {
    Hash32 seed = rng_.bytes32();
    KeyPair kp;
    kp.key_id = key_id;
    crypto_sign_seed_keypair(kp.public_key.bytes.data(), kp.secret_key.bytes.data(),
                             seed.bytes.data());
    return kp;
}

const Authority& Pki::create_authority(const std::string& name, Role role,
                                       const std::optional<std::string>& parent) {
    if (authorities_.contains(name)) {
        throw Error(Errc::DuplicateAuthority, name);
    }
    if (role == Role::Municipality) {
        if (!parent) throw Error(Errc::InvalidParent, name + " needs a canton parent");
        auto it = authorities_.find(*parent);
        if (it == authorities_.end() || it->second.role != Role::Canton) {
            throw Error(Errc::InvalidParent, name + " parent must be an existing canton");
        }
    } else if (role == Role::Confederation) {
        if (parent) throw Error(Errc::InvalidParent, "confederation has no parent");
    } else if (parent && !authorities_.contains(*parent)) {
        throw Error(Errc::InvalidParent, name + " parent unknown");
    }

    Authority a;
    a.name = name;
    a.role = role;
    a.parent = parent;
    a.root_key = generate_keypair(name + "/root");

    Certificate root;
    root.subject = name;
    root.public_key = a.root_key.public_key;
    root.issuer = name;
    root.purpose = KeyPurpose::TransactionSigning;
    Bytes tbs = root.to_be_signed();
    root.issuer_signature = sign(a.root_key, as_view(tbs)).bytes;
    a.root_certificate = root;

    auto [it, _] = authorities_.emplace(name, std::move(a));
    return it->second;
}

std::pair<KeyPair, Certificate> Pki::issue_certificate(const std::string& issuer,
                                                       const std::string& subject_label,
                                                       KeyPurpose purpose) {
    auto it = authorities_.find(issuer);
    if (it == authorities_.end()) throw Error(Errc::UnknownIssuer, issuer);

    KeyPair kp = generate_keypair(subject_label);
    Certificate cert;
    cert.subject = subject_label;
    cert.public_key = kp.public_key;
    cert.issuer = issuer;
    cert.purpose = purpose;
    Bytes tbs = cert.to_be_signed();
    cert.issuer_signature = sign(it->second.root_key, as_view(tbs)).bytes;
    it->second.issued.push_back(cert);
    issued_keys_[kp.key_id] = kp;
    return {std::move(kp), std::move(cert)};
}

const KeyPair* Pki::find_keypair(const std::string& key_id) const {
    auto it = issued_keys_.find(key_id);
    return it == issued_keys_.end() ? nullptr : &it->second;
}

const KeyPair& Pki::keypair(const std::string& key_id) const {
    const KeyPair* kp = find_keypair(key_id);
    if (!kp) throw Error(Errc::UnknownKey, key_id);
    return *kp;
}

const KeyPair& Pki::transaction_key(const std::string& authority) const {
    return keypair(authority + "/tx");
}

SignatureValue Pki::sign(const KeyPair& key, ByteView message) {
    ensure_sodium();
    SignatureValue sig;
    sig.signer = key.key_id;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(),
                         key.secret_key.bytes.data());
    return sig;
}

bool Pki::verify(const Certificate& cert, ByteView message, const SignatureValue& signature) {
    ensure_sodium();
    return crypto_sign_verify_detached(signature.bytes.data(), message.data(), message.size(),
                                       cert.public_key.bytes.data()) == 0;
}

namespace {
bool verify_under_root(const Certificate& cert, const Certificate& root) {
    Bytes tbs = cert.to_be_signed();
    return crypto_sign_verify_detached(cert.issuer_signature.data(), tbs.data(), tbs.size(),
                                       root.public_key.bytes.data()) == 0;
}
}  // namespace

bool Pki::verify_certificate(const Certificate& cert) const {
    auto it = authorities_.find(cert.issuer);
    if (it == authorities_.end()) return false;
    const Certificate& root = it->second.root_certificate;
    if (!verify_under_root(cert, root)) return false;
    // Roots self-verify (hop 1); leaves verify against a self-verifying
    // root (hop 2). Depth beyond 2 cannot be expressed.
    if (cert.subject != root.subject) {
        if (!verify_under_root(root, root)) return false;
    }
    return true;
}

bool Pki::verify_certificate_against(const Certificate& cert,
                                     const std::map<std::string, Certificate>& roots) {
    ensure_sodium();
    auto it = roots.find(cert.issuer);
    if (it == roots.end()) return false;
    if (!verify_under_root(it->second, it->second)) return false;
    return verify_under_root(cert, it->second);
}

const Authority* Pki::find(const std::string& name) const {
    auto it = authorities_.find(name);
    return it == authorities_.end() ? nullptr : &it->second;
}

const Authority& Pki::get(const std::string& name) const {
    const Authority* a = find(name);
    if (!a) throw Error(Errc::UnknownMember, name);
    return *a;
}

const Certificate* Pki::find_issued(const std::string& authority,
                                    const std::string& key_id) const {
    const Authority* a = find(authority);
    if (!a) return nullptr;
    for (const Certificate& c : a->issued) {
        if (c.subject == key_id) return &c;
    }
    return nullptr;
}

std::size_t Pki::issued_count(KeyPurpose purpose) const {
    std::size_t n = 0;
    for (const auto& [_, a] : authorities_) {
        for (const Certificate& c : a.issued) {
            if (c.purpose == purpose) ++n;
        }
    }
    return n;
}

}  // namespace proverum
