#ifndef HLG_PADIC_HPP
#define HLG_PADIC_HPP

#include "hlg/integers.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hlg::padic {

/// v_p(r) together with the prime it was taken at.  `infinite` marks the
/// valuation of zero.
struct PAdicValuation {
    Int prime;
    long value = 0;
    bool infinite = false;
};

/// The full multiplicative decomposition of a nonzero rational:
/// r = sign * prod p^{exponents[p]}, and |r|_oo as an exact rational.
struct FactoredNorm {
    std::map<Int, long> exponents;
    Rat archimedean; // |r|_oo
    int sign = 1;

    /// Reassembles sign * prod p^e; must reproduce the original input.
    Rat reconstruct() const;
};

struct ProductFormulaResult {
    Rat product;          // exactly 1 whenever the formula holds
    FactoredNorm certificate;
    bool holds = false;   // product == 1
};

/// v_p(r); requires certified prime p.  INFINITE iff r = 0.
PAdicValuation valuation(const Rat& r, const Int& p);

/// Evaluates prod_p |r|_p * |r|_oo exactly over the primes dividing the
/// numerator and denominator.  Throws ZeroInput on r = 0.
ProductFormulaResult verify_product_formula(const Rat& r);

/// Dense univariate polynomial over Z, coefficients[i] multiplies x^i.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Int> coefficients);

    Int operator()(const Int& x) const;
    Polynomial derivative() const;
    const std::vector<Int>& coefficients() const { return coeffs_; }
    std::string to_string() const;

  private:
    std::vector<Int> coeffs_;
};

struct HenselLift {
    Int root;            // lift mod p^{target_k}
    unsigned long target_k;
    unsigned long derivative_valuation; // m = v_p(f'(root))
};

/// Strong Hensel lifting: given f(root) = 0 mod p^k with m = v_p(f'(root))
/// and k > 2m, produces the unique lift mod p^{target_k} congruent to root
/// mod p^{k-m}.  Throws NotLiftable when the applicability condition fails.
HenselLift hensel_lift(const Polynomial& f, const Int& p, const Int& root, unsigned long k,
                       unsigned long target_k);

} // namespace hlg::padic

#endif
