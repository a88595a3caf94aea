#ifndef HLG_LOCALSEARCH_HPP
#define HLG_LOCALSEARCH_HPP

#include "hlg/integers.hpp"

#include <cstdint>
#include <vector>

namespace hlg::localsearch {

/// Outcome of the exhaustive primitive search for zeros of a diagonal form
/// F = sum a_i x_i^d over Z_p.
///
/// Soluble: `witness` is a primitive vector mod p^{witness_precision} with
/// F(witness) = 0 mod p^{witness_precision} and
/// witness_precision > 2 * derivative_valuation, the strong-Hensel condition
/// under which the zero lifts to Z_p.
///
/// Insoluble: the search exhausted every primitive residue class up to
/// exhausted_precision = 2 m + 1 (m as chosen by the caller), which is a
/// complete refutation: any p-adic zero would leave a primitive trace there.
struct SearchResult {
    bool soluble = false;
    std::vector<Int> witness;
    unsigned witness_precision = 0;
    unsigned derivative_valuation = 0;
    unsigned exhausted_precision = 0;
    std::uint64_t nodes_explored = 0;
};

/// Exhaustive primitive search mod p^max_level for zeros of the diagonal
/// degree-d form with the given coefficients, organized as a breadth-first
/// refinement over p-adic digits.  Classes whose every coordinate derivative
/// vanishes too deeply are refined; a class meeting the strong-Hensel bound
/// is returned as witness.  Throws EnumerationBudgetExceeded past `budget`
/// explored classes.
SearchResult search(const std::vector<Int>& coefficients, unsigned degree, const Int& p,
                    unsigned max_level, std::uint64_t budget = 8'000'000);

} // namespace hlg::localsearch

#endif
