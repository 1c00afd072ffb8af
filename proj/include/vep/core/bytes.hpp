#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vep/core/errors.hpp"

namespace vep {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Big-endian, append-only writer used by the wire codec and for canonical
// signing payloads. Varints are unsigned LEB128.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void varint(std::uint64_t v);
    void bytes(ByteView v) { buf_.insert(buf_.end(), v.begin(), v.end()); }
    void zeros(std::size_t n) { buf_.insert(buf_.end(), n, 0); }

    std::size_t size() const { return buf_.size(); }
    const Bytes& data() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

// Bounds-checked reader; throws DecodeError on truncation or malformed varints.
class ByteReader {
public:
    explicit ByteReader(ByteView view) : view_(view) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    std::uint64_t varint();
    ByteView bytes(std::size_t n);
    void skip(std::size_t n);

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return view_.size() - pos_; }
    bool done() const { return pos_ == view_.size(); }

private:
    void need(std::size_t n) const {
        if (remaining() < n) throw DecodeError("truncated input");
    }
    ByteView view_;
    std::size_t pos_ = 0;
};

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF). Catches any single-byte
// corruption, which is what the extension integrity check relies on.
std::uint16_t crc16(ByteView data);

std::string to_hex(ByteView data);

} // namespace vep
