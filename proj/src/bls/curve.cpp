#include "platoon/bls/curve.hpp"

#include "platoon/util/sha256.hpp"

namespace bls {

using util::BigUint;
using util::Bytes;

Fp g1_b() { return Fp::from_u64(4); }
Fp2 g2_b() { return Fp2::from_u64(4, 4); }

bool g1_on_curve_affine(const Fp& x, const Fp& y) {
    return y.square() == x.square() * x + g1_b();
}

bool g2_on_curve_affine(const Fp2& x, const Fp2& y) {
    return y.square() == x.square() * x + g2_b();
}

bool g1_in_subgroup(const G1& p) {
    if (p.is_infinity()) return true;
    return p.mul(params().r).is_infinity();
}

bool g2_in_subgroup(const G2& p) {
    if (p.is_infinity()) return true;
    return p.mul(params().r).is_infinity();
}

namespace {

// Smaller of y and -y under the plain-integer order.
Fp canonical_root_fp(const Fp& y) {
    Fp n = y.neg();
    return y.cmp_plain(n) <= 0 ? y : n;
}

Fp2 canonical_root_fp2(const Fp2& y) { return y.is_lex_largest() ? y.neg() : y; }

G1 derive_g1_generator() {
    for (uint64_t xi = 1; xi < 1000; ++xi) {
        Fp x = Fp::from_u64(xi);
        auto y = (x.square() * x + g1_b()).sqrt();
        if (!y) continue;
        G1 cand = G1::from_affine(x, canonical_root_fp(*y)).mul(params().h1);
        if (cand.is_infinity()) continue;
        if (!cand.mul(params().r).is_infinity()) continue;
        return cand;
    }
    throw std::logic_error("G1 generator search failed");
}

G2 derive_g2_generator() {
    for (uint64_t xi = 1; xi < 1000; ++xi) {
        Fp2 x = Fp2::from_u64(xi, 1);
        auto y = (x.square() * x + g2_b()).sqrt();
        if (!y) continue;
        G2 cand = G2::from_affine(x, canonical_root_fp2(*y)).mul(params().h2);
        if (cand.is_infinity()) continue;
        if (!cand.mul(params().r).is_infinity()) continue;
        return cand;
    }
    throw std::logic_error("G2 generator search failed");
}

constexpr uint8_t kFlagCompressed = 0x80;
constexpr uint8_t kFlagInfinity = 0x40;
constexpr uint8_t kFlagLexLargest = 0x20;

}  // namespace

const G1& g1_generator() {
    static const G1 g = derive_g1_generator();
    return g;
}

const G2& g2_generator() {
    static const G2 g = derive_g2_generator();
    return g;
}

Bytes g1_to_bytes(const G1& p) {
    Bytes out(48, 0);
    if (p.is_infinity()) {
        out[0] = kFlagCompressed | kFlagInfinity;
        return out;
    }
    auto [x, y] = p.to_affine();
    out = x.to_bytes_be();
    out[0] |= kFlagCompressed;
    Fp yn = y.neg();
    if (y.cmp_plain(yn) > 0) out[0] |= kFlagLexLargest;
    return out;
}

G1 g1_from_bytes(const Bytes& b) {
    if (b.size() != 48) throw DecodeError("G1: expected 48 bytes");
    uint8_t flags = b[0];
    if (!(flags & kFlagCompressed)) throw DecodeError("G1: missing compression flag");
    Bytes xb = b;
    xb[0] &= 0x1f;
    if (flags & kFlagInfinity) {
        if (flags & kFlagLexLargest) throw DecodeError("G1: bad infinity flags");
        for (uint8_t c : xb)
            if (c) throw DecodeError("G1: non-zero infinity encoding");
        return G1::infinity();
    }
    Fp x;
    try {
        x = Fp::from_bytes_be(xb);
    } catch (const std::invalid_argument&) {
        throw DecodeError("G1: x out of range");
    }
    auto y = (x.square() * x + g1_b()).sqrt();
    if (!y) throw DecodeError("G1: x not on curve");
    Fp yy = *y;
    bool largest = yy.cmp_plain(yy.neg()) > 0;
    if (largest != bool(flags & kFlagLexLargest)) yy = yy.neg();
    G1 p = G1::from_affine(x, yy);
    if (!g1_in_subgroup(p)) throw DecodeError("G1: not in the prime-order subgroup");
    return p;
}

Bytes g2_to_bytes(const G2& p) {
    Bytes out(96, 0);
    if (p.is_infinity()) {
        out[0] = kFlagCompressed | kFlagInfinity;
        return out;
    }
    auto [x, y] = p.to_affine();
    Bytes c1 = x.c1.to_bytes_be();
    Bytes c0 = x.c0.to_bytes_be();
    std::copy(c1.begin(), c1.end(), out.begin());
    std::copy(c0.begin(), c0.end(), out.begin() + 48);
    out[0] |= kFlagCompressed;
    if (y.is_lex_largest()) out[0] |= kFlagLexLargest;
    return out;
}

G2 g2_from_bytes(const Bytes& b) {
    if (b.size() != 96) throw DecodeError("G2: expected 96 bytes");
    uint8_t flags = b[0];
    if (!(flags & kFlagCompressed)) throw DecodeError("G2: missing compression flag");
    Bytes c1b(b.begin(), b.begin() + 48);
    Bytes c0b(b.begin() + 48, b.end());
    c1b[0] &= 0x1f;
    if (flags & kFlagInfinity) {
        if (flags & kFlagLexLargest) throw DecodeError("G2: bad infinity flags");
        for (size_t i = 0; i < 48; ++i)
            if (c1b[i] || c0b[i]) throw DecodeError("G2: non-zero infinity encoding");
        return G2::infinity();
    }
    Fp2 x;
    try {
        x = {Fp::from_bytes_be(c0b), Fp::from_bytes_be(c1b)};
    } catch (const std::invalid_argument&) {
        throw DecodeError("G2: x out of range");
    }
    auto y = (x.square() * x + g2_b()).sqrt();
    if (!y) throw DecodeError("G2: x not on curve");
    Fp2 yy = *y;
    if (yy.is_lex_largest() != bool(flags & kFlagLexLargest)) yy = yy.neg();
    G2 p = G2::from_affine(x, yy);
    if (!g2_in_subgroup(p)) throw DecodeError("G2: not in the prime-order subgroup");
    return p;
}

G1 map_digest_to_g1(const Bytes& digest32) {
    if (digest32.size() != 32) throw std::invalid_argument("map_digest_to_g1: expected 32 bytes");
    for (uint32_t ctr = 0; ctr < 256; ++ctr) {
        util::Sha256 h;
        h.update(digest32);
        h.update(std::string("map-to-g1"));
        uint8_t c = static_cast<uint8_t>(ctr);
        h.update(&c, 1);
        auto cand = h.finish();
        // A 256-bit value is always below the 381-bit modulus.
        BigUint xv = BigUint::from_bytes_be(Bytes(cand.begin(), cand.end()));
        Fp x = Fp::from_biguint(xv);
        auto y = (x.square() * x + g1_b()).sqrt();
        if (!y) continue;
        G1 p = G1::from_affine(x, canonical_root_fp(*y)).mul(params().h1);
        if (p.is_infinity()) continue;
        return p;
    }
    throw std::logic_error("map_digest_to_g1: search exhausted");
}

}  // namespace bls
