// Copyright 2026 The Proverum Simulator Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "proverum/bytes.hpp"

namespace proverum {

// Canonical message encoding shared by every module that hashes or signs:
// a record is the concatenation of its fields in declared order, each field
// a big-endian u32 byte length followed by the UTF-8 payload. Integers are
// rendered as decimal text, binary values as lowercase hex, so the encoding
// stays printable and bit-exact across implementations.
class CanonicalWriter {
  public:
    CanonicalWriter& field(std::string_view utf8);
    CanonicalWriter& field_u64(std::uint64_t value);
    CanonicalWriter& field_i64(std::int64_t value);
    CanonicalWriter& field_hash(const Hash32& digest);
    CanonicalWriter& field_hex(ByteView data);

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

  private:
    Bytes buf_;
};

/// Strict reader for the canonical encoding; throws Error(EncodingError) on
/// any malformed input (truncation, trailing bytes, bad hex, bad integers).
class CanonicalReader {
  public:
    explicit CanonicalReader(ByteView data) : data_(data) {}

    std::string field();
    std::uint64_t field_u64();
    std::int64_t field_i64();
    Hash32 field_hash();
    Bytes field_hex();

    bool at_end() const { return pos_ == data_.size(); }
    /// Throws unless the whole buffer was consumed.
    void expect_end() const;

  private:
    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace proverum
