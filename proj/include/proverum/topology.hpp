// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proverum/ledger.hpp"

namespace proverum {

// Country-scale constants for a full deployment; the default corpus stays
// at prototype scale.
inline constexpr int kCountryCantons = 26;
inline constexpr int kCountryMunicipalities = 2202;

struct TopologyConfig {
    struct AuthoritySpec {
        std::string name;
        Role role = Role::Municipality;
        std::optional<std::string> parent;
    };
    struct ChannelSpec {
        std::string id;
        std::string kind;  // federal | cantonal | external
        std::string canton;  // for cantonal channels
        std::set<std::string> members;
        std::set<Chaincode> chaincodes;
    };

    std::vector<AuthoritySpec> authorities;
    std::vector<ChannelSpec> channels;
    int peers_per_authority = 2;
    std::set<int> public_options{1, 2, 3};

    /// The prototype network: confederation, two cantons, two
    /// municipalities per canton, the post, one ESP, four channels.
    static TopologyConfig default_prototype();

    /// Line-oriented config: `authority <name> <role> [parent]`,
    /// `channel <id> <kind> [canton=<name>] <chaincodes> <member>...`,
    /// `peers <n>`, `publicenv <opts>`.
    static TopologyConfig parse(const std::string& text);

    std::vector<std::string> government_authorities() const;
    const AuthoritySpec* find_authority(const std::string& name) const;
};

}  // namespace proverum
