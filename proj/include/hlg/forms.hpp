#ifndef HLG_FORMS_HPP
#define HLG_FORMS_HPP

#include "hlg/integers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hlg::forms {

/// A place of Q: a finite prime or the real place.
struct Place {
    bool real = false;
    Int prime = 0;

    static Place at_real() { return {true, 0}; }
    static Place at_prime(Int p) { return {false, std::move(p)}; }
    bool operator<(const Place& o) const {
        if (real != o.real)
            return real < o.real;
        return prime < o.prime;
    }
    bool operator==(const Place& o) const { return real == o.real && prime == o.prime; }
    std::string str() const { return real ? "REAL" : prime.get_str(); }
};

/// Diagonal quadratic form sum a_i x_i^2 with nonzero integer coefficients.
/// Solubility work happens on the normalized form: the common factor is
/// dropped and each coefficient replaced by its squarefree part; both steps
/// preserve solubility and the witness transformation is recorded.
struct DiagonalQuadraticForm {
    std::vector<Int> coefficients;

    std::vector<Int> normalized;     // squarefree, gcd removed
    std::vector<Int> square_scaling; // q_i: coefficients[i] = common * normalized[i] * q_i^2
    Int common_factor = 1;

    static DiagonalQuadraticForm from_coefficients(std::vector<Int> coeffs);
    std::size_t rank() const { return coefficients.size(); }
    Int evaluate(const std::vector<Int>& x) const;
    Int evaluate_normalized(const std::vector<Int>& x) const;
};

struct LocalVerdict {
    Place place;
    bool soluble = false;

    // soluble case
    std::vector<Int> witness; // for the normalized form, residues mod p^witness_precision
    unsigned witness_precision = 0;
    unsigned derivative_valuation = 0; // strong-Hensel certificate: precision > 2 * this

    // insoluble case
    unsigned exhausted_precision = 0;
    std::uint64_t classes_explored = 0;

    std::string method;      // how the verdict was reached
    std::string certificate; // normalization record + search certificate
};

struct GlobalVerdict {
    bool soluble = false;
    std::optional<Place> obstruction;          // first failing place when insoluble
    std::vector<Place> obstructions;           // every failing place (their count is even)
    std::vector<LocalVerdict> local_verdicts;  // REAL and every p | 2*prod(a_i)
    std::vector<Int> witness;                  // rational zero of the original form (n = 3)
};

/// Quadratic form invariants deciding equivalence over Q.
struct FormInvariants {
    std::size_t rank = 0;
    Int discriminant_class = 1;               // squarefree representative in Q*/Q*^2
    std::pair<unsigned, unsigned> signature;  // (positives, negatives)
    std::map<Place, int> hasse_symbols;       // place -> prod_{i<j} (a_i, a_j)_v
};

struct EquivalenceReport {
    bool equivalent = false;
    FormInvariants lhs, rhs;
    std::vector<std::string> disagreements;
};

/// Nontrivial zero mod p of a diagonal quadratic form in n >= 3 variables,
/// guaranteed to exist since the variable count exceeds the degree.
/// Throws TooFewVariables for n <= 2.
std::vector<Int> chevalley_zero(const DiagonalQuadraticForm& form, const Int& p);

/// (a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nontrivial zero over the
/// completion at v; evaluated by the tame/dyadic product formulas.
int hilbert_symbol(const Int& a, const Int& b, const Place& v);

/// Decides solubility of the form over R or Q_p.  Good odd primes go through
/// the Chevalley zero plus a Hensel certificate; primes dividing 2*prod(a_i)
/// run the exhaustive primitive search at precision p^{2 v_p(4 prod a_i) + 1}.
LocalVerdict local_solubility(const DiagonalQuadraticForm& form, const Place& v);

/// Local-global decision: soluble over Q iff soluble at REAL and at every
/// p | 2*prod(a_i).  For ternary forms a primitive rational witness is
/// produced by the Mordell box search.
GlobalVerdict hasse_minkowski_decide(const DiagonalQuadraticForm& form);

/// Exhaustive search of the Mordell box |X| <= sqrt(bc), |Y| <= sqrt(ca),
/// |Z| <= sqrt(ab) for a primitive zero of a X^2 + b Y^2 - c Z^2 with
/// a, b, c > 0.  An empty result proves global insolubility.
std::optional<std::vector<Int>> mordell_search(const Int& a, const Int& b, const Int& c);

FormInvariants invariants(const DiagonalQuadraticForm& form, const std::vector<Place>& places);

/// Equivalence over Q by the invariant criterion: rank, discriminant class,
/// signature, and every Hasse symbol must agree.
EquivalenceReport equivalent_over_q(const DiagonalQuadraticForm& f, const DiagonalQuadraticForm& g);

struct StabilizerAlgebra {
    long dimension = 0;                         // in the projective linear algebra
    std::vector<std::vector<Rat>> basis;        // flattened (N*N + 1)-vectors: a_ij, lambda
    std::size_t variables = 0;
};

/// Dimension of the Lie-algebra stabilizer of the smooth diagonal
/// hypersurface F = sum c_i X_i^d inside the projective linear algebra,
/// by exact kernel computation of sum a_ij X_j dF/dX_i = lambda F.
StabilizerAlgebra infinitesimal_automorphisms(const std::vector<Int>& coefficients, unsigned degree);

} // namespace hlg::forms

#endif
