#include "platoon/util/drbg.hpp"

#include "platoon/util/sha256.hpp"

namespace util {

Drbg::Drbg(uint64_t seed) {
    Bytes material;
    append_u64_be(material, seed);
    key_ = sha256(material);
}

Drbg::Drbg(const Bytes& seed_material) { key_ = sha256(seed_material); }

void Drbg::fill(uint8_t* out, size_t len) {
    while (len > 0) {
        if (pool_pos_ == pool_.size()) {
            Sha256 h;
            h.update(key_);
            Bytes ctr;
            append_u64_be(ctr, counter_++);
            h.update(ctr);
            auto block = h.finish();
            pool_.assign(block.begin(), block.end());
            pool_pos_ = 0;
        }
        size_t take = std::min(len, pool_.size() - pool_pos_);
        std::copy(pool_.begin() + pool_pos_, pool_.begin() + pool_pos_ + take, out);
        pool_pos_ += take;
        out += take;
        len -= take;
    }
}

Bytes Drbg::bytes(size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

uint64_t Drbg::next_u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[i];
    return v;
}

uint64_t Drbg::uniform(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Drbg::uniform: zero bound");
    // Reject the low 2^64 mod bound values to avoid modulo bias.
    uint64_t min = (0 - bound) % bound;
    for (;;) {
        uint64_t v = next_u64();
        if (v >= min) return v % bound;
    }
}

double Drbg::uniform_real(double lo, double hi) {
    uint64_t v = next_u64() >> 11;  // 53 random bits
    double unit = static_cast<double>(v) / 9007199254740992.0;
    return lo + unit * (hi - lo);
}

Drbg Drbg::child(const std::string& label) const {
    Bytes material = key_;
    Bytes tag = to_bytes(label);
    material.insert(material.end(), tag.begin(), tag.end());
    return Drbg(material);
}

}  // namespace util
