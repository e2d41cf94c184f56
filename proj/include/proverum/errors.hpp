// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proverum {

enum class Errc {
    // pki
    DuplicateAuthority,
    InvalidParent,
    UnknownIssuer,
    // ledger
    IncompatibleChaincode,
    UnknownMember,
    NotAMember,
    BadSignature,
    WrongOrderer,
    EmptyPool,
    UnknownChannel,
    // privdata
    NotAuthorized,
    NoOnChainDigest,
    UnknownKey,
    // citizen_registry
    NotOwner,
    DuplicateId,
    UnknownId,
    SameMunicipality,
    // electoral_register
    NotInRegister,
    UnknownCommitment,
    UnknownRegister,
    // artifact_lifecycle
    RegisterDigestMismatch,
    // result_publication
    WrongScope,
    UnsignedResult,
    MissingChildResult,
    ChildFailedPlausibility,
    PrematureDestruction,
    // public_env
    GatekeeperRejection,
    BadSourceSignature,
    NotAProducer,
    // scenario
    ParseError,
    StepPreconditionFailed,
    UnsupportedContext,
    // plumbing
    EncodingError,
    IoError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace proverum
