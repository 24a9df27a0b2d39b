#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace util {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

inline std::string to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (uint8_t c : b) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0x0f]);
    }
    return out;
}

inline Bytes from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("from_hex: bad digit");
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

inline void append_u32_be(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void append_u64_be(Bytes& out, uint64_t v) {
    append_u32_be(out, static_cast<uint32_t>(v >> 32));
    append_u32_be(out, static_cast<uint32_t>(v));
}

// Length-prefixed writer/reader used by transaction payloads and snapshots.
// All integers are big-endian.
class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v) { append_u32_be(buf_, v); }
    void u64(uint64_t v) { append_u64_be(buf_, v); }
    void f64(double v) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        u64(bits);
    }
    void bytes(const Bytes& b) {
        u32(static_cast<uint32_t>(b.size()));
        buf_.insert(buf_.end(), b.begin(), b.end());
    }
    void str(const std::string& s) { bytes(to_bytes(s)); }
    const Bytes& data() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class ByteReader {
public:
    explicit ByteReader(const Bytes& b) : buf_(b) {}

    uint8_t u8() {
        need(1);
        return buf_[pos_++];
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | buf_[pos_++];
        return v;
    }
    uint64_t u64() {
        uint64_t hi = u32();
        return (hi << 32) | u32();
    }
    double f64() {
        uint64_t bits = u64();
        double v;
        __builtin_memcpy(&v, &bits, sizeof(v));
        return v;
    }
    Bytes bytes() {
        uint32_t len = u32();
        need(len);
        Bytes out(buf_.begin() + pos_, buf_.begin() + pos_ + len);
        pos_ += len;
        return out;
    }
    std::string str() {
        Bytes b = bytes();
        return std::string(b.begin(), b.end());
    }
    bool done() const { return pos_ == buf_.size(); }
    size_t remaining() const { return buf_.size() - pos_; }

private:
    void need(size_t n) const {
        if (pos_ + n > buf_.size()) throw std::runtime_error("ByteReader: truncated input");
    }
    const Bytes& buf_;
    size_t pos_ = 0;
};

}  // namespace util
