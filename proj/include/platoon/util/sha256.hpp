#pragma once

#include <array>
#include <cstdint>

#include "platoon/util/bytes.hpp"

namespace util {

// Streaming SHA-256.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    Sha256& update(const uint8_t* data, size_t len);
    Sha256& update(const Bytes& b) { return update(b.data(), b.size()); }
    Sha256& update(const std::string& s) {
        return update(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }
    std::array<uint8_t, 32> finish();

private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_len_ = 0;
    uint8_t buf_[64];
    size_t buf_len_ = 0;
};

Bytes sha256(const Bytes& data);
Bytes sha256(const std::string& data);

}  // namespace util
