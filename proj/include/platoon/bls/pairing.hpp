#pragma once

#include "platoon/bls/curve.hpp"

namespace bls {

// Optimal ate pairing e: G1 x G2 -> GT. Either argument at infinity gives
// the identity of GT.
Fp12 pairing(const G1& p, const G2& q);

// Instrumentation: pairing evaluations performed by this thread. Benchmark
// and test hooks read and reset the counter around the code under test.
uint64_t pairing_call_count();
void reset_pairing_call_count();

}  // namespace bls
