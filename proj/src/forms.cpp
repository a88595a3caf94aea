#include "hlg/forms.hpp"

#include "hlg/errors.hpp"
#include "hlg/localsearch.hpp"
#include "hlg/padic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace hlg::forms {

DiagonalQuadraticForm DiagonalQuadraticForm::from_coefficients(std::vector<Int> coeffs) {
    if (coeffs.size() < 2)
        throw Error(ErrorCode::TooFewVariables, "need at least 2 coefficients");
    for (const Int& a : coeffs)
        if (a == 0)
            throw Error(ErrorCode::SingularForm, "zero coefficient");
    DiagonalQuadraticForm f;
    f.coefficients = std::move(coeffs);

    Int g = 0;
    for (const Int& a : f.coefficients)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    f.common_factor = g;

    for (const Int& a : f.coefficients) {
        Int b = a / g;
        Int s = squarefree_part(b);
        Int q2 = b / s; // perfect square
        Int q;
        mpz_sqrt(q.get_mpz_t(), q2.get_mpz_t());
        f.normalized.push_back(s);
        f.square_scaling.push_back(q);
    }
    return f;
}

Int DiagonalQuadraticForm::evaluate(const std::vector<Int>& x) const {
    Int acc = 0;
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        acc += coefficients[i] * x[i] * x[i];
    return acc;
}

Int DiagonalQuadraticForm::evaluate_normalized(const std::vector<Int>& x) const {
    Int acc = 0;
    for (std::size_t i = 0; i < normalized.size(); ++i)
        acc += normalized[i] * x[i] * x[i];
    return acc;
}

std::vector<Int> chevalley_zero(const DiagonalQuadraticForm& form, const Int& p) {
    require_prime(p);
    const auto& a = form.coefficients;
    const std::size_t n = a.size();
    if (n < 3)
        throw Error(ErrorCode::TooFewVariables,
                    "Chevalley requires more variables than the degree");
    std::vector<Int> x(n, 0);

    for (std::size_t i = 0; i < n; ++i)
        if (a[i] % p == 0) {
            x[i] = 1;
            return x;
        }

    if (p == 2) {
        // x^2 = x mod 2, so the form is linear; among three odd
        // coefficients two sum to 0 mod 2.
        x[0] = 1;
        x[1] = 1;
        return x;
    }

    // all unit coefficients: a x0^2 + b x1^2 + c = 0 mod p has a solution
    // by the two-value-set count (p+1 values among p residues)
    for (Int u = 0; u < p; ++u) {
        Int rhs = (-(a[2] + a[0] * u * u)) % p;
        if (rhs < 0)
            rhs += p;
        Int binv;
        mpz_invert(binv.get_mpz_t(), a[1].get_mpz_t(), p.get_mpz_t());
        Int t = rhs * binv % p;
        if (t == 0) {
            x[0] = u;
            x[2] = 1;
            return x;
        }
        if (legendre(t, p) == 1) {
            x[0] = u;
            x[1] = sqrt_mod(t, p);
            x[2] = 1;
            return x;
        }
    }
    throw Error(ErrorCode::SingularForm, "unreachable: Chevalley zero must exist");
}

namespace {

// tame and dyadic Hilbert symbol formulas over Q_p / R
int hilbert_formula(Int a, Int b, const Place& v) {
    if (a == 0 || b == 0)
        throw Error(ErrorCode::ZeroInput, "Hilbert symbol needs nonzero entries");
    if (v.real)
        return (a < 0 && b < 0) ? -1 : 1;

    const Int& p = v.prime;
    require_prime(p);
    long alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    auto mod2 = [](const Int& x, long k) { return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(k))); };
    if (p != 2) {
        int eps = mod2(p, 4) == 3 ? 1 : 0; // (p-1)/2 mod 2
        int sign = 0;
        sign += eps * static_cast<int>((alpha % 2) * (beta % 2));
        int res = sign % 2 == 0 ? 1 : -1;
        if (beta % 2 == 1)
            res *= legendre(a, p);
        if (alpha % 2 == 1)
            res *= legendre(b, p);
        return res;
    }
    // p = 2: (a,b)_2 = (-1)^{eps(u)eps(w) + alpha omega(w) + beta omega(u)}
    auto eps_u = [&](const Int& u) { return mod2(u, 4) == 3 ? 1 : 0; };          // (u-1)/2 mod 2
    auto omega_u = [&](const Int& u) {
        long r = mod2(u, 8);
        return (r == 3 || r == 5) ? 1 : 0; // (u^2-1)/8 mod 2
    };
    long e = eps_u(a) * eps_u(b) + (alpha % 2) * omega_u(b) + (beta % 2) * omega_u(a);
    return e % 2 == 0 ? 1 : -1;
}

std::string join_ints(const std::vector<Int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i].get_str();
    return os.str();
}

std::string normalization_note(const DiagonalQuadraticForm& f) {
    std::ostringstream os;
    os << "normalized coefficients (" << join_ints(f.normalized) << ")";
    if (f.common_factor != 1)
        os << ", common factor " << f.common_factor.get_str() << " removed";
    bool scaled = false;
    for (const Int& q : f.square_scaling)
        if (q != 1)
            scaled = true;
    if (scaled)
        os << ", coordinate scalings x_i -> x_i/q_i with q = (" << join_ints(f.square_scaling)
           << ")";
    return os.str();
}

} // namespace

int hilbert_symbol(const Int& a, const Int& b, const Place& v) {
    return hilbert_formula(a, b, v);
}

LocalVerdict local_solubility(const DiagonalQuadraticForm& form, const Place& v) {
    LocalVerdict out;
    out.place = v;

    if (v.real) {
        bool pos = false, neg = false;
        for (const Int& a : form.coefficients)
            (a > 0 ? pos : neg) = true;
        out.soluble = pos && neg;
        out.method = "real-signs";
        if (out.soluble) {
            // explicit zero: a_i (-a_j) + a_j (a_i) = 0 for a sign pair (i, j)
            std::size_t i = 0, j = 0;
            for (std::size_t k = 0; k < form.coefficients.size(); ++k) {
                if (form.coefficients[k] > 0)
                    i = k;
                else
                    j = k;
            }
            std::ostringstream os;
            os << "x_" << i << " = sqrt(" << Int(-form.coefficients[j]).get_str() << "), x_" << j
               << " = sqrt(" << form.coefficients[i].get_str() << ")";
            out.certificate = os.str();
        } else {
            out.certificate = "all coefficients of one sign";
        }
        return out;
    }

    const Int& p = v.prime;
    require_prime(p);

    Int prod = 1;
    for (const Int& s : form.normalized)
        prod *= s;

    if (p != 2 && prod % p != 0) {
        // good prime: Chevalley zero, lifted by Hensel (unit coefficients
        // make every nontrivial zero smooth)
        DiagonalQuadraticForm norm_form;
        norm_form.coefficients = form.normalized;
        if (form.rank() >= 3) {
            out.witness = chevalley_zero(norm_form, p);
        } else {
            // binary: soluble iff -a1/a0 is a residue
            Int a0 = form.normalized[0] % p, a1 = form.normalized[1] % p;
            Int inv;
            mpz_invert(inv.get_mpz_t(), a0.get_mpz_t(), p.get_mpz_t());
            Int t = (-(a1 * inv)) % p;
            if (t < 0)
                t += p;
            if (legendre(t, p) != 1) {
                out.soluble = false;
                out.method = "binary-residue";
                out.exhausted_precision = 1;
                out.certificate = "-a1/a0 is a quadratic non-residue mod " + p.get_str();
                return out;
            }
            out.witness = {sqrt_mod(t, p), 1};
        }
        out.soluble = true;
        out.witness_precision = 1;
        out.derivative_valuation = 0;
        out.method = "chevalley-hensel";
        out.certificate = "unit coefficients mod " + p.get_str() +
                          ": nontrivial zero mod p is smooth and lifts; " +
                          normalization_note(form);
        return out;
    }

    // bad prime: exhaustive primitive search at the certified precision
    Int bound = 4 * prod;
    unsigned m = valuation_int(bound, p);
    unsigned K = 2 * m + 1;
    auto sr = localsearch::search(form.normalized, 2, p, K);
    out.soluble = sr.soluble;
    out.classes_explored = sr.nodes_explored;
    out.method = "digit-search";
    if (sr.soluble) {
        out.witness = sr.witness;
        out.witness_precision = sr.witness_precision;
        out.derivative_valuation = sr.derivative_valuation;
        std::ostringstream os;
        os << "strong Hensel: F = 0 mod " << p.get_str() << "^" << sr.witness_precision
           << " with derivative valuation " << sr.derivative_valuation << "; "
           << normalization_note(form);
        out.certificate = os.str();
    } else {
        out.exhausted_precision = sr.exhausted_precision;
        std::ostringstream os;
        os << "no primitive class survives mod " << p.get_str() << "^" << sr.exhausted_precision
           << " (complete at 2 v_" << p.get_str() << "(4 prod a_i) + 1); " << sr.nodes_explored
           << " classes explored; " << normalization_note(form);
        out.certificate = os.str();
    }
    return out;
}

std::optional<std::vector<Int>> mordell_search(const Int& a, const Int& b, const Int& c) {
    if (a <= 0 || b <= 0 || c <= 0)
        throw Error(ErrorCode::SingularForm, "Mordell box requires positive coefficients");
    Int xb, yb;
    mpz_sqrt(xb.get_mpz_t(), Int(b * c).get_mpz_t());
    mpz_sqrt(yb.get_mpz_t(), Int(c * a).get_mpz_t());
    Int zbound2 = a * b;
    for (Int x = 0; x <= xb; ++x) {
        for (Int y = 0; y <= yb; ++y) {
            Int t = a * x * x + b * y * y;
            if (t % c != 0)
                continue;
            Int z2 = t / c;
            if (z2 > zbound2)
                continue;
            Int z;
            mpz_sqrt(z.get_mpz_t(), z2.get_mpz_t());
            if (z * z != z2)
                continue;
            if (x == 0 && y == 0 && z == 0)
                continue;
            Int g = 0;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
            return std::vector<Int>{x / g, y / g, z / g};
        }
    }
    return std::nullopt;
}

namespace {

std::vector<Place> relevant_places(const DiagonalQuadraticForm& form) {
    std::set<Int> primes{Int(2)};
    for (const Int& s : form.normalized)
        for (const auto& [q, e] : factorize(s))
            primes.insert(q);
    std::vector<Place> places{Place::at_real()};
    for (const Int& q : primes)
        places.push_back(Place::at_prime(q));
    return places;
}

} // namespace

GlobalVerdict hasse_minkowski_decide(const DiagonalQuadraticForm& form) {
    GlobalVerdict out;
    out.soluble = true;
    for (const Place& v : relevant_places(form)) {
        LocalVerdict lv = local_solubility(form, v);
        if (!lv.soluble) {
            if (out.soluble) {
                out.soluble = false;
                out.obstruction = v;
            }
            out.obstructions.push_back(v);
        }
        out.local_verdicts.push_back(std::move(lv));
    }
    if (!out.soluble || form.rank() != 3)
        return out;

    // produce a rational witness: arrange the normalized form as
    // a X^2 + b Y^2 - c Z^2 with positive a, b, c, run the Mordell box,
    // then undo permutation, sign flip, and the square scalings.
    std::vector<Int> s = form.normalized;
    int negs = 0;
    for (const Int& si : s)
        if (si < 0)
            ++negs;
    if (negs == 2) { // zeros of -F are zeros of F
        for (Int& si : s)
            si = -si;
    }
    std::size_t neg_idx = 0;
    for (std::size_t i = 0; i < 3; ++i)
        if (s[i] < 0)
            neg_idx = i;
    std::vector<std::size_t> perm{0, 1, 2}; // position k holds original index perm[k]
    std::swap(perm[2], perm[neg_idx]);
    auto w = mordell_search(s[perm[0]], s[perm[1]], -s[perm[2]]);
    if (!w)
        throw Error(ErrorCode::SingularForm,
                    "Mordell box must contain a zero for a locally soluble ternary form");
    std::vector<Rat> xr(3);
    for (std::size_t k = 0; k < 3; ++k) {
        xr[perm[k]] = Rat((*w)[k], form.square_scaling[perm[k]]);
        xr[perm[k]].canonicalize();
    }
    // clear denominators, make primitive
    Int lcm = 1;
    for (const Rat& r : xr)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    std::vector<Int> xi(3);
    Int g = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        Rat scaled = xr[k] * Rat(lcm, 1);
        scaled.canonicalize();
        xi[k] = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi[k].get_mpz_t());
    }
    for (auto& v : xi)
        v /= g;
    if (form.evaluate(xi) != 0)
        throw Error(ErrorCode::SingularForm, "witness re-evaluation failed");
    out.witness = std::move(xi);
    return out;
}

FormInvariants invariants(const DiagonalQuadraticForm& form, const std::vector<Place>& places) {
    FormInvariants inv;
    inv.rank = form.rank();
    Int disc = 1;
    unsigned pos = 0, neg = 0;
    for (const Int& a : form.coefficients) {
        disc *= a;
        (a > 0 ? pos : neg) += 1;
    }
    inv.discriminant_class = squarefree_part(disc);
    inv.signature = {pos, neg};
    for (const Place& v : places) {
        int eps = 1;
        for (std::size_t i = 0; i < form.coefficients.size(); ++i)
            for (std::size_t j = i + 1; j < form.coefficients.size(); ++j)
                eps *= hilbert_symbol(form.coefficients[i], form.coefficients[j], v);
        inv.hasse_symbols[v] = eps;
    }
    return inv;
}

EquivalenceReport equivalent_over_q(const DiagonalQuadraticForm& f,
                                    const DiagonalQuadraticForm& g) {
    if (f.rank() != g.rank())
        throw Error(ErrorCode::RankMismatch, "forms have different ranks");

    std::set<Int> primes{Int(2)};
    for (const auto* form : {&f, &g})
        for (const Int& a : form->coefficients)
            for (const auto& [q, e] : factorize(a))
                primes.insert(q);
    std::vector<Place> places{Place::at_real()};
    for (const Int& q : primes)
        places.push_back(Place::at_prime(q));

    EquivalenceReport rep;
    rep.lhs = invariants(f, places);
    rep.rhs = invariants(g, places);
    if (rep.lhs.discriminant_class != rep.rhs.discriminant_class)
        rep.disagreements.push_back("discriminant class");
    if (rep.lhs.signature != rep.rhs.signature)
        rep.disagreements.push_back("signature at REAL");
    for (const Place& v : places)
        if (rep.lhs.hasse_symbols.at(v) != rep.rhs.hasse_symbols.at(v))
            rep.disagreements.push_back("Hasse symbol at " + v.str());
    rep.equivalent = rep.disagreements.empty();
    return rep;
}

namespace {

// exact kernel dimension of a rational matrix (rows x cols), returning a basis
std::vector<std::vector<Rat>> kernel_basis(std::vector<std::vector<Rat>> m, std::size_t cols) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t sel = r;
        while (sel < m.size() && m[sel][c] == 0)
            ++sel;
        if (sel == m.size())
            continue;
        std::swap(m[r], m[sel]);
        Rat inv = 1 / m[r][c];
        for (std::size_t cc = c; cc < cols; ++cc)
            m[r][cc] *= inv;
        for (std::size_t rr = 0; rr < m.size(); ++rr) {
            if (rr == r || m[rr][c] == 0)
                continue;
            Rat f = m[rr][c];
            for (std::size_t cc = c; cc < cols; ++cc)
                m[rr][cc] -= f * m[r][cc];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        std::vector<Rat> vec(cols, Rat(0));
        vec[c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            vec[pivot_col[i]] = -m[i][c];
        basis.push_back(std::move(vec));
    }
    return basis;
}

} // namespace

StabilizerAlgebra infinitesimal_automorphisms(const std::vector<Int>& coefficients,
                                              unsigned degree) {
    const std::size_t N = coefficients.size();
    for (const Int& c : coefficients)
        if (c == 0)
            throw Error(ErrorCode::SingularForm, "diagonal form with zero coefficient");
    if (degree < 2 || N < 2)
        throw Error(ErrorCode::SingularForm, "need degree >= 2 in >= 2 variables");

    // unknowns: a_ij (row-major), then lambda
    const std::size_t cols = N * N + 1;
    // monomial X_i^{d-1} X_j identified by the pair (i, j); includes j = i
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> rows;
    auto row_of = [&](std::size_t i, std::size_t j) -> std::vector<Rat>& {
        auto key = std::make_pair(i, j);
        auto it = rows.find(key);
        if (it == rows.end())
            it = rows.emplace(key, std::vector<Rat>(cols, Rat(0))).first;
        return it->second;
    };

    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            // a_ij X_j * d c_i X_i^{d-1}
            std::size_t mi = i, mj = j;
            if (degree == 2 && mj < mi)
                std::swap(mi, mj); // X_i X_j = X_j X_i when d - 1 = 1
            row_of(mi, mj)[i * N + j] += Rat(Int(degree) * coefficients[i], 1);
        }
        // -lambda c_i X_i^d
        row_of(i, i)[N * N] -= Rat(coefficients[i], 1);
    }

    std::vector<std::vector<Rat>> matrix;
    for (auto& [k, row] : rows)
        matrix.push_back(std::move(row));

    StabilizerAlgebra out;
    out.variables = N;
    out.basis = kernel_basis(std::move(matrix), cols);
    // quotient by the scalar family a = (lambda/d) I
    out.dimension = static_cast<long>(out.basis.size()) - 1;
    return out;
}

} // namespace hlg::forms
