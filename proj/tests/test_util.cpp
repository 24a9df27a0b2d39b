#include "doctest.h"

#include "platoon/util/biguint.hpp"
#include "platoon/util/bytes.hpp"
#include "platoon/util/drbg.hpp"
#include "platoon/util/sha256.hpp"

using util::BigUint;
using util::Bytes;

TEST_CASE("sha256 known vectors") {
    CHECK(util::to_hex(util::sha256(std::string(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(util::to_hex(util::sha256(std::string("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(util::to_hex(util::sha256(std::string(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("sha256 streaming equals one-shot") {
    std::string msg(1000, 'x');
    util::Sha256 h;
    for (size_t i = 0; i < msg.size(); i += 7) h.update(msg.substr(i, 7));
    auto a = h.finish();
    CHECK(Bytes(a.begin(), a.end()) == util::sha256(msg));
}

TEST_CASE("hex round trip") {
    Bytes b = {0x00, 0xff, 0x10, 0xab};
    CHECK(util::from_hex(util::to_hex(b)) == b);
    CHECK_THROWS(util::from_hex("0g"));
    CHECK_THROWS(util::from_hex("abc"));
}

TEST_CASE("byte writer/reader round trip") {
    util::ByteWriter w;
    w.u8(7);
    w.u32(123456);
    w.u64(0xdeadbeefcafebabeULL);
    w.str("hello");
    w.f64(3.25);
    util::ByteReader r(w.data());
    CHECK(r.u8() == 7);
    CHECK(r.u32() == 123456);
    CHECK(r.u64() == 0xdeadbeefcafebabeULL);
    CHECK(r.str() == "hello");
    CHECK(r.f64() == 3.25);
    CHECK(r.done());
}

TEST_CASE("drbg determinism and stream independence") {
    util::Drbg a(42), b(42), c(43);
    CHECK(a.bytes(64) == b.bytes(64));
    CHECK(a.bytes(64) != c.bytes(64));
    util::Drbg p(7);
    CHECK(p.child("x").bytes(16) != p.child("y").bytes(16));
    CHECK(util::Drbg(7).child("x").bytes(16) == util::Drbg(7).child("x").bytes(16));
}

TEST_CASE("drbg uniform stays in range") {
    util::Drbg rng(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(rng.uniform(17) < 17);
        double x = rng.uniform_real(2.0, 3.0);
        CHECK(x >= 2.0);
        CHECK(x < 3.0);
    }
}

TEST_CASE("biguint arithmetic basics") {
    BigUint a = BigUint::from_hex("ffffffffffffffffffffffffffffffff");
    BigUint b = BigUint::from_hex("100000000000000000000000000000000");
    CHECK(a + BigUint(1) == b);
    CHECK(b - a == BigUint(1));
    CHECK((a * a).to_hex() == "fffffffffffffffffffffffffffffffe00000000000000000000000000000001");
    CHECK((b >> 128).is_one());
    CHECK((BigUint(1) << 128) == b);
}

TEST_CASE("biguint divmod") {
    BigUint n = BigUint::from_hex("123456789abcdef0123456789abcdef0123456789abcdef");
    BigUint d = BigUint::from_hex("fedcba987654321");
    BigUint q, r;
    BigUint::divmod(n, d, q, r);
    CHECK(q * d + r == n);
    CHECK(r < d);
    CHECK_THROWS(n / BigUint(0));
}

TEST_CASE("biguint isqrt") {
    BigUint x = BigUint::from_hex("123456789abcdef0123456789abcdef0");
    BigUint s = x.isqrt();
    CHECK(s * s <= x);
    CHECK((s + BigUint(1)) * (s + BigUint(1)) > x);
    BigUint square = BigUint::from_hex("10000000000000000000000000000000000000000");
    CHECK(square.isqrt() * square.isqrt() == square);
}

TEST_CASE("biguint byte round trips") {
    BigUint v = BigUint::from_hex("0102030405060708090a0b0c0d0e0f10");
    Bytes be = v.to_bytes_be(32);
    CHECK(be.size() == 32);
    CHECK(BigUint::from_bytes_be(be) == v);
    CHECK(BigUint::from_hex(v.to_hex()) == v);
}

TEST_CASE("mod_pow matches small cases") {
    CHECK(util::mod_pow(BigUint(3), BigUint(20), BigUint(1000)) == BigUint(401));
    CHECK(util::mod_pow(BigUint(2), BigUint(10), BigUint(1 << 20)) == BigUint(1024));
}
