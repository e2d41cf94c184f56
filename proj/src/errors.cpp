// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/errors.hpp"

namespace proverum {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::DuplicateAuthority: return "DuplicateAuthority";
        case Errc::InvalidParent: return "InvalidParent";
        case Errc::UnknownIssuer: return "UnknownIssuer";
        case Errc::IncompatibleChaincode: return "IncompatibleChaincode";
        case Errc::UnknownMember: return "UnknownMember";
        case Errc::NotAMember: return "NotAMember";
        case Errc::BadSignature: return "BadSignature";
        case Errc::WrongOrderer: return "WrongOrderer";
        case Errc::EmptyPool: return "EmptyPool";
        case Errc::UnknownChannel: return "UnknownChannel";
        case Errc::NotAuthorized: return "NotAuthorized";
        case Errc::NoOnChainDigest: return "NoOnChainDigest";
        case Errc::UnknownKey: return "UnknownKey";
        case Errc::NotOwner: return "NotOwner";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::UnknownId: return "UnknownId";
        case Errc::SameMunicipality: return "SameMunicipality";
        case Errc::NotInRegister: return "NotInRegister";
        case Errc::UnknownCommitment: return "UnknownCommitment";
        case Errc::UnknownRegister: return "UnknownRegister";
        case Errc::RegisterDigestMismatch: return "RegisterDigestMismatch";
        case Errc::WrongScope: return "WrongScope";
        case Errc::UnsignedResult: return "UnsignedResult";
        case Errc::MissingChildResult: return "MissingChildResult";
        case Errc::ChildFailedPlausibility: return "ChildFailedPlausibility";
        case Errc::PrematureDestruction: return "PrematureDestruction";
        case Errc::GatekeeperRejection: return "GatekeeperRejection";
        case Errc::BadSourceSignature: return "BadSourceSignature";
        case Errc::NotAProducer: return "NotAProducer";
        case Errc::ParseError: return "ParseError";
        case Errc::StepPreconditionFailed: return "StepPreconditionFailed";
        case Errc::UnsupportedContext: return "UnsupportedContext";
        case Errc::EncodingError: return "EncodingError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace proverum
