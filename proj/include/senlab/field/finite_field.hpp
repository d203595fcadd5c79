#pragma once

#include <vector>

namespace senlab::field {

/// Polynomials over F_p as ascending coefficient vectors in [0, p), with no
/// trailing zeros (the zero polynomial is empty).
using FpPoly = std::vector<long>;

FpPoly fp_trim(FpPoly a);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, long p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p);
FpPoly fp_mod(FpPoly a, const FpPoly& m, long p);
FpPoly fp_gcd(FpPoly a, FpPoly b, long p);
/// base^(p^k) mod m, by k Frobenius steps.
FpPoly fp_frobenius(const FpPoly& base, long k, const FpPoly& m, long p);

/// Ben-Or test: m (degree >= 1) is irreducible iff gcd(m, y^(p^i) - y) = 1
/// for i = 1 .. deg/2.
bool fp_irreducible(const FpPoly& m, long p);

}  // namespace senlab::field
