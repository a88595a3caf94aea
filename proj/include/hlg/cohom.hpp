#ifndef HLG_COHOM_HPP
#define HLG_COHOM_HPP

#include "hlg/integers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hlg::cohom {

/// Finite group as an explicit multiplication table on indices 0..n-1.
/// Construction verifies the axioms exhaustively.
class FiniteGroup {
  public:
    static FiniteGroup from_table(std::vector<std::vector<unsigned>> table, std::string name = "");
    static FiniteGroup cyclic(unsigned n);
    static FiniteGroup product_of_cyclics(const std::vector<unsigned>& orders);
    static FiniteGroup symmetric(unsigned n); // n <= 4
    /// "C6", "C2xC4", "S3", ... (preset grammar used by the CLI)
    static FiniteGroup preset(const std::string& name);

    unsigned size() const { return static_cast<unsigned>(table_.size()); }
    unsigned mul(unsigned a, unsigned b) const { return table_[a][b]; }
    unsigned inv(unsigned a) const { return inverse_[a]; }
    unsigned identity() const { return identity_; }
    const std::string& name() const { return name_; }
    const std::vector<std::vector<unsigned>>& table() const { return table_; }

    bool is_abelian() const;
    unsigned element_order(unsigned a) const;
    bool is_subgroup(const std::vector<unsigned>& elements) const;
    /// Distinct cyclic subgroups, each as a sorted element list.
    std::vector<std::vector<unsigned>> cyclic_subgroups() const;
    /// Greedy small generating set.
    std::vector<unsigned> generators() const;
    /// Full automorphism group as permutation tables.
    std::vector<std::vector<unsigned>> automorphisms() const;

  private:
    FiniteGroup() = default;
    static FiniteGroup from_table_unchecked(std::vector<std::vector<unsigned>> table,
                                            std::string name);

    std::vector<std::vector<unsigned>> table_;
    std::vector<unsigned> inverse_;
    unsigned identity_ = 0;
    std::string name_;

    friend struct GroupAction;
};

/// delta acting on gamma by automorphisms; the homomorphism property and
/// each automorphism are verified exhaustively on construction.
struct GroupAction {
    FiniteGroup delta, gamma;
    std::vector<std::vector<unsigned>> action; // action[d][g]

    static GroupAction create(FiniteGroup delta, FiniteGroup gamma,
                              std::vector<std::vector<unsigned>> action);
    static GroupAction trivial(FiniteGroup delta, FiniteGroup gamma);
    unsigned act(unsigned d, unsigned g) const { return action[d][g]; }
};

/// Crossed homomorphism c: delta -> gamma, c(st) = c(s) * s(c(t)).
struct CrossedHom {
    std::vector<unsigned> values;
    bool operator==(const CrossedHom& o) const { return values == o.values; }
    bool operator<(const CrossedHom& o) const { return values < o.values; }
};

bool is_crossed_hom(const GroupAction& A, const CrossedHom& c);

/// c is a coboundary iff c(s) = g^{-1} * s(g) for some g (the class of the
/// trivial cocycle under twisted conjugation).
bool is_coboundary(const GroupAction& A, const CrossedHom& c);

struct H1Result {
    std::vector<CrossedHom> representatives; // lexicographically least per class
    std::vector<std::size_t> class_sizes;
    std::uint64_t cocycles = 0;
};

/// All crossed homomorphisms grouped under twisted conjugation
/// c'(s) = g^{-1} c(s) s(g); one representative per class.
/// Enumeration is generator-based; throws EnumerationBudgetExceeded when
/// |gamma|^{#generators} exceeds the ceiling.
H1Result h1(const GroupAction& A, std::uint64_t ceiling = 10'000'000);

/// Independent route: gamma-conjugacy classes of homomorphisms
/// delta -> gamma x| delta splitting the projection.  Returns the class
/// count and, for each h1 representative, the index of its lift class
/// (defined by s |-> (c(s), s)); agreement means this is a bijection.
struct LiftClassResult {
    std::size_t class_count = 0;
    std::vector<std::size_t> h1_to_lift_class; // indexed like h1 representatives
    bool bijective = false;
};
LiftClassResult h1_via_lifts(const GroupAction& A, const H1Result& cocycle_route,
                             std::uint64_t ceiling = 10'000'000);

/// Classes whose restriction to every family member is trivial
/// (the finite model of the kernel ker{H1(K,G) -> prod_v H1(K_v,G)}).
/// Family members must be subgroups of delta (NotASubgroup otherwise).
std::vector<CrossedHom> sha_kernel(const GroupAction& A,
                                   const std::vector<std::vector<unsigned>>& family,
                                   const H1Result& h1_result);

/// Pointwise sum for abelian gamma (NonabelianCoefficients otherwise).
CrossedHom baer_sum(const GroupAction& A, const CrossedHom& c1, const CrossedHom& c2);

/// Inner twist: s |-> conj(c(s)) after s.  InvalidCocycle if c is not a
/// crossed homomorphism for the action.
GroupAction twist(const GroupAction& A, const CrossedHom& c);

/// Formal integer combination in the group ring of a cyclic group of the
/// given order; coefficient[i] multiplies gamma^i.
struct GroupRingElement {
    std::vector<Int> coefficients;
    GroupRingElement(unsigned order) : coefficients(order, Int(0)) {}
    bool operator==(const GroupRingElement& o) const { return coefficients == o.coefficients; }
};

GroupRingElement group_ring_mul(const GroupRingElement& a, const GroupRingElement& b);

struct KolyvaginCheck {
    unsigned order = 0; // f + 1
    GroupRingElement lhs, rhs; // (gamma - 1) D  and  (f+1) - Norm
    bool holds = false;
};

/// The derivative operator identity (gamma - 1) D = (f+1) - Norm for
/// D = sum i gamma^i in Z[C_{f+1}].
KolyvaginCheck kolyvagin_derivative_check(unsigned order);

struct OrbitCount {
    std::uint64_t formula = 0;     // (|A| + |A[2]|) / 2
    std::uint64_t enumeration = 0; // direct orbits of x -> -x
    bool agrees = false;
};

/// Orbits of the involution x -> -x on a finite abelian group.
OrbitCount orbit_count_involution(const FiniteGroup& A);

/// Every homomorphism delta -> Aut(gamma) as an action (used to sweep the
/// preset library in tests).
std::vector<GroupAction> all_actions(const FiniteGroup& delta, const FiniteGroup& gamma);

} // namespace hlg::cohom

#endif
