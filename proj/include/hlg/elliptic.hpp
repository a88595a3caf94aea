#ifndef HLG_ELLIPTIC_HPP
#define HLG_ELLIPTIC_HPP

#include "hlg/cubic.hpp"
#include "hlg/integers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hlg::elliptic {

/// y^2 = x^3 + a x + b over Q with nonzero discriminant -16(4a^3 + 27b^2).
struct WeierstrassCurve {
    Int a, b;
    Int discriminant;

    static WeierstrassCurve create(Int a, Int b);
    std::set<Int> bad_primes() const; // primes dividing the discriminant
};

/// Affine point or the point at infinity; affine coordinates are exact
/// rationals satisfying the curve equation.
struct CurvePoint {
    bool infinity = true;
    Rat x, y;

    static CurvePoint at_infinity() { return {}; }
    static CurvePoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const CurvePoint& o) const {
        if (infinity || o.infinity)
            return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

bool on_curve(const WeierstrassCurve& E, const CurvePoint& P);

/// Chord-tangent addition; INFINITY is the identity.
CurvePoint point_add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint point_negate(const CurvePoint& P);
CurvePoint point_mul(const WeierstrassCurve& E, const Int& n, const CurvePoint& P);

struct EulerData {
    Int prime;
    bool good_reduction = false;
    long a_p = 0; // defined when good: 1 + p - a_p = #E(F_p)
};

/// a_p by the quadratic-character sum #E(F_p) = p + 1 + sum_x chi(x^3+ax+b).
EulerData count_points_ap(const WeierstrassCurve& E, const Int& p);

/// Independent counter sweeping y instead of x (value-distribution of the
/// cubic, then y^2 lookups); used as the dual-route check.
EulerData count_points_ap_by_y(const WeierstrassCurve& E, const Int& p);

/// Local Euler factor (1 - a_p p^{-s} + p^{1-2s})^{-1} at a good prime.
double local_factor(const WeierstrassCurve& E, const Int& p, double s);

struct PartialLResult {
    double value = 0;
    double tail_bound = 0; // relative bound on the omitted p > P_max factors
    std::uint64_t primes_used = 0;
};

/// Truncated product over good primes p <= P_max, p not in S; S must contain
/// every bad prime (BadPrimeNotExcluded otherwise), s > 3/2.
PartialLResult partial_l(const WeierstrassCurve& E, const std::set<Int>& S, double s,
                         std::uint64_t P_max);

struct LValueResult {
    double value = 0;
    double tail_bound = 0;
    std::uint64_t terms = 0;
};

/// L(E,1) = 2 sum a_n/n exp(-2 pi n / sqrt(N)) for sign +1 curves; a_n
/// extended multiplicatively (Hecke recursion at good p, a_{p^k} = a_p^k at
/// bad p with the supplied bad_ap in {0, +-1}, default 0).
LValueResult l_value_at_1(const WeierstrassCurve& E, const Int& conductor, std::uint64_t terms,
                          const std::map<Int, int>& bad_ap = {},
                          std::optional<double> tolerance = std::nullopt);

struct PeriodResult {
    double value = 0;          // the agreed value
    double primary = 0;        // substituted adaptive-Simpson route
    double secondary = 0;      // double-exponential route
    int real_components = 1;
};

/// Real period: integral of dx/y over the unbounded real component (the
/// y > 0 branch), doubled when the real locus has two components.  Two
/// independent quadrature schemes must agree to 1e-8.
PeriodResult real_period(const WeierstrassCurve& E);

struct JacobianModel {
    Int d;                      // the cubic u^3 + v^3 = d w^3
    WeierstrassCurve curve;     // y^2 = x^3 - 432 d^2
    std::vector<std::string> checks; // round-trip certificates on sample points
};

/// Jacobian of a x^3 + b y^3 + c z^3 = 0: the curve abc X^3 + Y^3 + Z^3 = 0,
/// i.e. u^3 + v^3 = d w^3 with d = -abc, in Weierstrass form
/// y^2 = x^3 - 432 d^2 via the classical birational map (verified on sample
/// points as it is applied).
JacobianModel cubic_jacobian_model(const cubic::DiagonalCubicForm& form);

/// Forward map (u, v, w) |-> (x, y); u + v = 0 goes to INFINITY.
CurvePoint cubic_point_to_weierstrass(const Int& d, const Rat& u, const Rat& v, const Rat& w);
/// Backward map; INFINITY |-> (1, -1, 0).
std::array<Rat, 3> weierstrass_point_to_cubic(const Int& d, const CurvePoint& P);

struct ConductorScanEntry {
    Int conductor;
    double score = 0; // relative Lambda inconsistency over the sample points
};

struct ConductorScanResult {
    Int best;
    double best_score = 0;
    std::vector<ConductorScanEntry> table;
};

/// Numerical self-consistency scan of Lambda(s) = N^{s/2}(2 pi)^{-s}
/// Gamma(s) L(s) against Lambda(2-s), via the two-sided incomplete-gamma
/// series evaluated at two cutoff parameters.  The candidate minimizing the
/// inconsistency wins; NoConsistentCandidate if every score exceeds 1e-3.
ConductorScanResult functional_equation_scan(const WeierstrassCurve& E,
                                             const std::vector<Int>& candidates,
                                             const std::map<Int, int>& bad_ap = {});

/// Default candidate grid: divisors of prod p^{cap(p)} over bad primes,
/// with the standard conductor-exponent caps (8 at 2, 5 at 3, 2 above).
std::vector<Int> default_conductor_candidates(const WeierstrassCurve& E);

struct RatioEntry {
    unsigned u = 1;             // model rescaling (x, y) -> (x/u^2, y/u^3)
    Int b_model;                // that model's b
    Int abs_discriminant;
    double omega = 0;
    double ratio = 0;           // L(E,1) / omega
    std::optional<std::pair<int, int>> match_9_2i3j; // ratio = 9 * 2^i * 3^j
};

struct RatioReport {
    Int conductor;
    double l_value = 0;
    double l_tail_bound = 0;
    std::vector<RatioEntry> table;   // one row per u-rescaled integral model
    RatioEntry chosen;               // |discriminant|-minimizing model
};

/// L(E,1)/Omega across the u-rescaled integral models u = 2^i 3^j <= 144,
/// with the conductor derived by the functional-equation scan; the chosen
/// row is the |discriminant| minimizer.
RatioReport ratio_l_over_omega(const WeierstrassCurve& E, std::uint64_t terms = 0,
                               std::optional<Int> conductor = std::nullopt);

/// a_p table for good p <= bound, CSV-ready.
std::vector<std::pair<std::uint64_t, long>> ap_table(const WeierstrassCurve& E,
                                                     std::uint64_t bound, unsigned workers = 1);

} // namespace hlg::elliptic

#endif
