// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proverum/bytes.hpp"
#include "proverum/rng.hpp"

namespace proverum {

enum class Role { Confederation, Canton, Municipality, Esp, SwissPost };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view token);

/// True for the roles that may join the ordering consortium and hold the
/// result-publication contract.
bool is_government(Role role);

enum class KeyPurpose { PeerIdentity, TransactionSigning, Publication };

std::string_view to_string(KeyPurpose purpose);
std::optional<KeyPurpose> key_purpose_from_string(std::string_view token);

struct PublicKey {
    std::array<std::uint8_t, 32> bytes{};
    auto operator<=>(const PublicKey&) const = default;
};

struct SecretKey {
    std::array<std::uint8_t, 64> bytes{};
};

struct KeyPair {
    std::string key_id;  // e.g. "Uster/tx", "Uster/peer-0"
    PublicKey public_key;
    SecretKey secret_key;
};

struct SignatureValue {
    std::string signer;  // key id, informational
    std::array<std::uint8_t, 64> bytes{};
    auto operator<=>(const SignatureValue&) const = default;
};

// Minimal canonical certificate: one hop from an authority root to a leaf
// key. Not X.509; the simulator needs CA semantics, not wire compatibility.
struct Certificate {
    std::string subject;  // authority name or peer/key label
    PublicKey public_key;
    std::string issuer;  // issuing authority name; == subject for roots
    KeyPurpose purpose = KeyPurpose::TransactionSigning;
    std::array<std::uint8_t, 64> issuer_signature{};

    /// The to-be-signed bytes: (subject, publicKey, purpose) canonical record.
    Bytes to_be_signed() const;
};

struct Authority {
    std::string name;
    Role role = Role::Municipality;
    std::optional<std::string> parent;  // canton name for municipalities
    KeyPair root_key;
    Certificate root_certificate;
    std::vector<Certificate> issued;  // leaf certs, in issue order
};

// Directory of authorities and their certificate authorities. Key material
// is generated from the simulation's seeded randomness so every run with the
// same seed produces identical keys, certificates and signatures.
class Pki {
  public:
    explicit Pki(std::uint64_t seed);

    const Authority& create_authority(const std::string& name, Role role,
                                      const std::optional<std::string>& parent);

    /// Issues a fresh keypair + certificate signed by the issuer's root key.
    std::pair<KeyPair, Certificate> issue_certificate(const std::string& issuer,
                                                      const std::string& subject_label,
                                                      KeyPurpose purpose);

    static SignatureValue sign(const KeyPair& key, ByteView message);

    /// Never throws: any malformed input verifies false.
    static bool verify(const Certificate& cert, ByteView message,
                       const SignatureValue& signature);

    /// Chain check: cert's issuer signature verifies under a registered
    /// authority root, and the chain terminates in at most 2 hops.
    bool verify_certificate(const Certificate& cert) const;

    const Authority* find(const std::string& name) const;
    const Authority& get(const std::string& name) const;
    bool exists(const std::string& name) const { return find(name) != nullptr; }

    /// Leaf certificate issued to `authority` with the given key id, if any.
    const Certificate* find_issued(const std::string& authority, const std::string& key_id) const;

    /// Custody lookup: the simulator keeps issued key pairs in the
    /// directory so modules can sign on an authority's behalf.
    const KeyPair* find_keypair(const std::string& key_id) const;
    const KeyPair& keypair(const std::string& key_id) const;

    /// Convenience for the ubiquitous "<name>/tx" transaction key.
    const KeyPair& transaction_key(const std::string& authority) const;

    const std::map<std::string, Authority>& directory() const { return authorities_; }

    std::size_t issued_count(KeyPurpose purpose) const;

    /// Standalone chain verification against an explicit set of trusted
    /// roots; used by the memberless dump verifier.
    static bool verify_certificate_against(const Certificate& cert,
                                           const std::map<std::string, Certificate>& roots);

  private:
    KeyPair generate_keypair(const std::string& key_id);

    DeterministicRng rng_;
    std::map<std::string, Authority> authorities_;
    std::map<std::string, KeyPair> issued_keys_;  // key id -> pair
};

}  // namespace proverum
