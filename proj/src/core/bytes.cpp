#include "vep/core/bytes.hpp"

namespace vep {

void ByteWriter::u16(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::varint(std::uint64_t v) {
    while (v >= 0x80) {
        buf_.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    buf_.push_back(static_cast<std::uint8_t>(v));
}

std::uint8_t ByteReader::u8() {
    need(1);
    return view_[pos_++];
}

std::uint16_t ByteReader::u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(view_[pos_] << 8 | view_[pos_ + 1]);
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | view_[pos_ + i];
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | view_[pos_ + i];
    pos_ += 8;
    return v;
}

std::uint64_t ByteReader::varint() {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        need(1);
        std::uint8_t b = view_[pos_++];
        if (shift == 63 && (b & 0x7e)) throw DecodeError("varint overflow");
        v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
        if (shift > 63) throw DecodeError("varint overflow");
    }
}

ByteView ByteReader::bytes(std::size_t n) {
    need(n);
    ByteView v = view_.subspan(pos_, n);
    pos_ += n;
    return v;
}

void ByteReader::skip(std::size_t n) {
    need(n);
    pos_ += n;
}

std::uint16_t crc16(ByteView data) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t byte : data) {
        crc ^= static_cast<std::uint16_t>(byte) << 8;
        for (int i = 0; i < 8; ++i)
            crc = (crc & 0x8000) ? static_cast<std::uint16_t>(crc << 1) ^ 0x1021
                                 : static_cast<std::uint16_t>(crc << 1);
    }
    return crc;
}

std::string to_hex(ByteView data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

} // namespace vep
