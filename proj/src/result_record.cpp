// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/result_record.hpp"

#include "proverum/encoding.hpp"
#include "proverum/errors.hpp"

namespace proverum {

std::string_view to_string(Scope scope) {
    switch (scope) {
        case Scope::Municipality: return "municipality";
        case Scope::Canton: return "canton";
        case Scope::Federal: return "federal";
    }
    return "?";
}

std::optional<Scope> scope_from_string(std::string_view token) {
    if (token == "municipality") return Scope::Municipality;
    if (token == "canton") return Scope::Canton;
    if (token == "federal") return Scope::Federal;
    return std::nullopt;
}

Bytes ResultRecord::canonical() const {
    CanonicalWriter w;
    w.field(to_string(scope));
    w.field(scope_name);
    w.field(event_id);
    w.field_i64(electorate_size);
    w.field(submitter);
    w.field_u64(counts.size());
    for (const auto& [choice, n] : counts) {
        w.field(choice);
        w.field_i64(n);
    }
    return w.take();
}

ResultRecord ResultRecord::from_canonical(ByteView data) {
    CanonicalReader r(data);
    ResultRecord rec;
    auto scope = scope_from_string(r.field());
    if (!scope) throw Error(Errc::EncodingError, "bad scope token");
    rec.scope = *scope;
    rec.scope_name = r.field();
    rec.event_id = r.field();
    rec.electorate_size = r.field_i64();
    rec.submitter = r.field();
    std::uint64_t n = r.field_u64();
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string choice = r.field();
        rec.counts[choice] = r.field_i64();
    }
    r.expect_end();
    return rec;
}

std::string ResultRecord::to_transport() const {
    CanonicalWriter w;
    Bytes body = canonical();
    w.field(std::string_view{reinterpret_cast<const char*>(body.data()), body.size()});
    w.field(signature.signer);
    w.field_hex(ByteView{signature.bytes.data(), signature.bytes.size()});
    return to_hex(as_view(w.bytes()));
}

ResultRecord ResultRecord::from_transport(const std::string& transport) {
    auto raw = from_hex(transport);
    if (!raw) throw Error(Errc::EncodingError, "bad transport hex");
    CanonicalReader r(as_view(*raw));
    std::string body = r.field();
    ResultRecord rec = from_canonical(as_view(body));
    rec.signature.signer = r.field();
    Bytes sig = r.field_hex();
    if (sig.size() != 64) throw Error(Errc::EncodingError, "signature must be 64 bytes");
    std::copy(sig.begin(), sig.end(), rec.signature.bytes.begin());
    r.expect_end();
    return rec;
}

std::int64_t ResultRecord::total_votes() const {
    std::int64_t total = 0;
    for (const auto& [_, n] : counts) total += n;
    return total;
}

}  // namespace proverum
