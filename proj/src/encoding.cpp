// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#include "proverum/encoding.hpp"

#include <charconv>
#include <limits>

#include "proverum/errors.hpp"

namespace proverum {

namespace {
void append_u32_be(Bytes& buf, std::uint32_t v) {
    buf.push_back(static_cast<std::uint8_t>(v >> 24));
    buf.push_back(static_cast<std::uint8_t>(v >> 16));
    buf.push_back(static_cast<std::uint8_t>(v >> 8));
    buf.push_back(static_cast<std::uint8_t>(v));
}
}  // namespace

CanonicalWriter& CanonicalWriter::field(std::string_view utf8) {
    append_u32_be(buf_, static_cast<std::uint32_t>(utf8.size()));
    buf_.insert(buf_.end(), utf8.begin(), utf8.end());
    return *this;
}

CanonicalWriter& CanonicalWriter::field_u64(std::uint64_t value) {
    return field(std::to_string(value));
}

CanonicalWriter& CanonicalWriter::field_i64(std::int64_t value) {
    return field(std::to_string(value));
}

CanonicalWriter& CanonicalWriter::field_hash(const Hash32& digest) {
    return field(to_hex(digest));
}

CanonicalWriter& CanonicalWriter::field_hex(ByteView data) { return field(to_hex(data)); }

std::string CanonicalReader::field() {
    if (pos_ + 4 > data_.size()) throw Error(Errc::EncodingError, "truncated length prefix");
    std::uint32_t len = (static_cast<std::uint32_t>(data_[pos_]) << 24) |
                        (static_cast<std::uint32_t>(data_[pos_ + 1]) << 16) |
                        (static_cast<std::uint32_t>(data_[pos_ + 2]) << 8) |
                        static_cast<std::uint32_t>(data_[pos_ + 3]);
    pos_ += 4;
    if (pos_ + len > data_.size()) throw Error(Errc::EncodingError, "truncated field payload");
    std::string out(reinterpret_cast<const char*>(data_.data() + pos_), len);
    pos_ += len;
    return out;
}

std::uint64_t CanonicalReader::field_u64() {
    std::string f = field();
    std::uint64_t v{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty()) {
        throw Error(Errc::EncodingError, "bad u64 field '" + f + "'");
    }
    // Canonical decimal has no leading zeros.
    if (f.size() > 1 && f[0] == '0') throw Error(Errc::EncodingError, "non-canonical u64 field");
    return v;
}

std::int64_t CanonicalReader::field_i64() {
    std::string f = field();
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty()) {
        throw Error(Errc::EncodingError, "bad i64 field '" + f + "'");
    }
    return v;
}

Hash32 CanonicalReader::field_hash() {
    std::string f = field();
    auto h = hash_from_hex(f);
    if (!h) throw Error(Errc::EncodingError, "bad digest field '" + f + "'");
    return *h;
}

Bytes CanonicalReader::field_hex() {
    std::string f = field();
    auto b = from_hex(f);
    if (!b) throw Error(Errc::EncodingError, "bad hex field");
    return *b;
}

void CanonicalReader::expect_end() const {
    if (!at_end()) throw Error(Errc::EncodingError, "trailing bytes after record");
}

}  // namespace proverum
