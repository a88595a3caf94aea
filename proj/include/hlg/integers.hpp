#ifndef HLG_INTEGERS_HPP
#define HLG_INTEGERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hlg {

/// Exact arbitrary-precision integer and rational scalars.
/// `Rat` is always stored reduced with positive denominator
/// (mpq canonical form), so 0 is uniquely 0/1.
using Int = mpz_class;
using Rat = mpq_class;

Int parse_int(const std::string& s);

/// Parses "p/q" or "p"; canonicalizes. Throws ParseError / ZeroInput (q = 0).
Rat parse_rational(const std::string& s);

/// Deterministic Miller-Rabin over the witness set {2,...,37}, valid for
/// all n < 3.317e24.  Larger inputs are rejected (PrimeBoundExceeded)
/// rather than answered probabilistically.
bool is_prime(const Int& n);

/// Throws CompositeModulus unless p is a certified prime >= 2.
void require_prime(const Int& p);

/// Prime factorization by trial division plus Pollard rho; suited to the
/// coefficient scales this library works at.
std::map<Int, unsigned> factorize(Int n);

/// Squarefree part: n / (largest square dividing n), keeping sign.
Int squarefree_part(const Int& n);

/// Cubefree part: n / (largest cube dividing n), keeping sign.
Int cubefree_part(const Int& n);

/// v_p(n) for n != 0.
unsigned valuation_int(const Int& n, const Int& p);

/// Legendre symbol (a|p) for odd prime p.
int legendre(const Int& a, const Int& p);

/// A square root of a mod odd prime p when (a|p) = 1 (Tonelli-Shanks).
Int sqrt_mod(const Int& a, const Int& p);

/// Exact integer cube root test: returns true and sets r if n = r^3.
bool is_perfect_cube(const Int& n, Int& r);

Int pow_int(const Int& base, unsigned long exp);

/// All primes <= bound (simple sieve).
std::vector<std::uint64_t> primes_upto(std::uint64_t bound);

std::int64_t to_i64(const Int& n);

} // namespace hlg

#endif
