// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "proverum/bytes.hpp"
#include "proverum/pki.hpp"

namespace proverum {

enum class Scope { Municipality, Canton, Federal };

std::string_view to_string(Scope scope);
std::optional<Scope> scope_from_string(std::string_view token);

/// Signed per-question tallies at one administrative scope.
struct ResultRecord {
    Scope scope = Scope::Municipality;
    std::string scope_name;
    std::string event_id;
    std::map<std::string, std::int64_t> counts;  // choice -> tally
    std::int64_t electorate_size = 0;
    std::string submitter;
    SignatureValue signature;  // over canonical() by the submitter's transaction key

    Bytes canonical() const;  // unsigned part, declared field order
    static ResultRecord from_canonical(ByteView data);

    /// Hex transport form of (canonical, signer, signature) used in
    /// transaction arguments, world state and publication payloads.
    std::string to_transport() const;
    static ResultRecord from_transport(const std::string& transport);

    std::int64_t total_votes() const;
};

}  // namespace proverum
