#include "hlg/cohom.hpp"

#include "hlg/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hlg::cohom {

FiniteGroup FiniteGroup::from_table_unchecked(std::vector<std::vector<unsigned>> table,
                                              std::string name) {
    FiniteGroup g;
    g.table_ = std::move(table);
    g.name_ = std::move(name);
    const unsigned n = g.size();
    // identity
    unsigned id = n;
    for (unsigned e = 0; e < n; ++e) {
        bool ok = true;
        for (unsigned a = 0; a < n; ++a)
            ok &= g.table_[e][a] == a && g.table_[a][e] == a;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id == n)
        throw Error(ErrorCode::InvalidGroupTable, "no identity element");
    g.identity_ = id;
    g.inverse_.assign(n, n);
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b)
            if (g.table_[a][b] == id && g.table_[b][a] == id) {
                g.inverse_[a] = b;
                break;
            }
        if (g.inverse_[a] == n)
            throw Error(ErrorCode::InvalidGroupTable, "element without inverse");
    }
    return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<unsigned>> table, std::string name) {
    const auto n = static_cast<unsigned>(table.size());
    if (n == 0)
        throw Error(ErrorCode::InvalidGroupTable, "empty table");
    for (const auto& row : table) {
        if (row.size() != n)
            throw Error(ErrorCode::InvalidGroupTable, "table is not square");
        for (unsigned v : row)
            if (v >= n)
                throw Error(ErrorCode::InvalidGroupTable, "entry out of range");
    }
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
            for (unsigned c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw Error(ErrorCode::InvalidGroupTable, "associativity fails");
    return from_table_unchecked(std::move(table), std::move(name));
}

FiniteGroup FiniteGroup::cyclic(unsigned n) {
    if (n == 0)
        throw Error(ErrorCode::InvalidGroupTable, "cyclic group needs n >= 1");
    std::vector<std::vector<unsigned>> t(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return from_table_unchecked(std::move(t), "C" + std::to_string(n));
}

FiniteGroup FiniteGroup::product_of_cyclics(const std::vector<unsigned>& orders) {
    if (orders.empty())
        throw Error(ErrorCode::InvalidGroupTable, "empty product");
    unsigned n = 1;
    for (unsigned k : orders) {
        if (k == 0)
            throw Error(ErrorCode::InvalidGroupTable, "zero order factor");
        n *= k;
    }
    auto decode = [&](unsigned idx) {
        std::vector<unsigned> digits(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            digits[i] = idx % orders[i];
            idx /= orders[i];
        }
        return digits;
    };
    auto encode = [&](const std::vector<unsigned>& digits) {
        unsigned idx = 0;
        for (std::size_t i = orders.size(); i-- > 0;)
            idx = idx * orders[i] + digits[i];
        return idx;
    };
    std::vector<std::vector<unsigned>> t(n, std::vector<unsigned>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            auto da = decode(a), db = decode(b);
            std::vector<unsigned> dc(orders.size());
            for (std::size_t i = 0; i < orders.size(); ++i)
                dc[i] = (da[i] + db[i]) % orders[i];
            t[a][b] = encode(dc);
        }
    std::string nm;
    for (std::size_t i = 0; i < orders.size(); ++i)
        nm += (i ? "x" : "") + ("C" + std::to_string(orders[i]));
    return from_table_unchecked(std::move(t), nm);
}

FiniteGroup FiniteGroup::symmetric(unsigned n) {
    if (n == 0 || n > 4)
        throw Error(ErrorCode::InvalidGroupTable, "symmetric presets go up to S4");
    std::vector<std::vector<unsigned>> perms;
    std::vector<unsigned> base(n);
    std::iota(base.begin(), base.end(), 0u);
    std::sort(base.begin(), base.end());
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    auto index_of = [&](const std::vector<unsigned>& p) {
        return static_cast<unsigned>(std::lower_bound(perms.begin(), perms.end(), p) -
                                     perms.begin());
    };
    const auto m = static_cast<unsigned>(perms.size());
    std::vector<std::vector<unsigned>> t(m, std::vector<unsigned>(m));
    for (unsigned a = 0; a < m; ++a)
        for (unsigned b = 0; b < m; ++b) {
            std::vector<unsigned> comp(n);
            for (unsigned i = 0; i < n; ++i)
                comp[i] = perms[a][perms[b][i]];
            t[a][b] = index_of(comp);
        }
    return from_table_unchecked(std::move(t), "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::preset(const std::string& name) {
    if (name.empty())
        throw Error(ErrorCode::ParseError, "empty group name");
    if (name[0] == 'S')
        return symmetric(static_cast<unsigned>(std::stoul(name.substr(1))));
    // CnxCmx...
    std::vector<unsigned> orders;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        if (part.empty() || part[0] != 'C')
            throw Error(ErrorCode::ParseError, "unknown group preset '" + name + "'");
        orders.push_back(static_cast<unsigned>(std::stoul(part.substr(1))));
    }
    if (orders.size() == 1)
        return cyclic(orders[0]);
    return product_of_cyclics(orders);
}

bool FiniteGroup::is_abelian() const {
    for (unsigned a = 0; a < size(); ++a)
        for (unsigned b = a + 1; b < size(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

unsigned FiniteGroup::element_order(unsigned a) const {
    unsigned ord = 1, x = a;
    while (x != identity_) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

bool FiniteGroup::is_subgroup(const std::vector<unsigned>& elements) const {
    std::set<unsigned> s(elements.begin(), elements.end());
    if (s.empty() || !s.count(identity_))
        return false;
    for (unsigned a : s) {
        if (a >= size() || !s.count(inv(a)))
            return false;
        for (unsigned b : s)
            if (!s.count(mul(a, b)))
                return false;
    }
    return true;
}

std::vector<std::vector<unsigned>> FiniteGroup::cyclic_subgroups() const {
    std::set<std::vector<unsigned>> seen;
    for (unsigned a = 0; a < size(); ++a) {
        std::set<unsigned> sub{identity_};
        unsigned x = a;
        while (x != identity_) {
            sub.insert(x);
            x = mul(x, a);
        }
        seen.insert(std::vector<unsigned>(sub.begin(), sub.end()));
    }
    return {seen.begin(), seen.end()};
}

std::vector<unsigned> FiniteGroup::generators() const {
    std::vector<unsigned> gens;
    std::set<unsigned> span{identity_};
    // greedy: always add the element extending the span the most
    while (span.size() < size()) {
        unsigned best = 0;
        std::set<unsigned> best_span;
        for (unsigned a = 0; a < size(); ++a) {
            if (span.count(a))
                continue;
            std::set<unsigned> trial = span;
            trial.insert(a);
            // close under multiplication
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<unsigned> cur(trial.begin(), trial.end());
                for (unsigned x : cur)
                    for (unsigned y : cur) {
                        if (trial.insert(mul(x, y)).second)
                            grew = true;
                    }
            }
            if (trial.size() > best_span.size()) {
                best_span = std::move(trial);
                best = a;
            }
        }
        gens.push_back(best);
        span = std::move(best_span);
    }
    if (gens.empty())
        gens.push_back(identity_); // trivial group
    return gens;
}

namespace {

// extend values given on generators to the whole group along a BFS word
// decomposition; returns false if the group is not covered
struct WordTree {
    std::vector<unsigned> order;            // BFS ordering, starts at identity
    std::vector<std::pair<unsigned, unsigned>> parent; // element = parent * gens[gi]
};

WordTree word_tree(const FiniteGroup& G, const std::vector<unsigned>& gens) {
    WordTree wt;
    std::vector<int> seen(G.size(), -1);
    wt.parent.assign(G.size(), {0, 0});
    std::vector<unsigned> queue{G.identity()};
    seen[G.identity()] = 1;
    wt.order.push_back(G.identity());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        unsigned e = queue[qi];
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            unsigned nxt = G.mul(e, gens[gi]);
            if (seen[nxt] < 0) {
                seen[nxt] = 1;
                wt.parent[nxt] = {e, static_cast<unsigned>(gi)};
                wt.order.push_back(nxt);
                queue.push_back(nxt);
            }
        }
    }
    if (wt.order.size() != G.size())
        throw Error(ErrorCode::InvalidGroupTable, "generators do not generate");
    return wt;
}

} // namespace

GroupAction GroupAction::create(FiniteGroup delta, FiniteGroup gamma,
                                std::vector<std::vector<unsigned>> action) {
    if (action.size() != delta.size())
        throw Error(ErrorCode::InvalidAction, "one permutation per delta element required");
    for (const auto& perm : action) {
        if (perm.size() != gamma.size())
            throw Error(ErrorCode::InvalidAction, "permutation size mismatch");
        // automorphism check
        std::vector<bool> hit(gamma.size(), false);
        for (unsigned v : perm) {
            if (v >= gamma.size() || hit[v])
                throw Error(ErrorCode::InvalidAction, "not a bijection");
            hit[v] = true;
        }
        for (unsigned x = 0; x < gamma.size(); ++x)
            for (unsigned y = 0; y < gamma.size(); ++y)
                if (perm[gamma.mul(x, y)] != gamma.mul(perm[x], perm[y]))
                    throw Error(ErrorCode::InvalidAction, "not an automorphism");
    }
    for (unsigned d1 = 0; d1 < delta.size(); ++d1)
        for (unsigned d2 = 0; d2 < delta.size(); ++d2) {
            unsigned d12 = delta.mul(d1, d2);
            for (unsigned g = 0; g < gamma.size(); ++g)
                if (action[d12][g] != action[d1][action[d2][g]])
                    throw Error(ErrorCode::InvalidAction, "action is not a homomorphism");
        }
    GroupAction A;
    A.delta = std::move(delta);
    A.gamma = std::move(gamma);
    A.action = std::move(action);
    return A;
}

GroupAction GroupAction::trivial(FiniteGroup delta, FiniteGroup gamma) {
    std::vector<unsigned> ident(gamma.size());
    std::iota(ident.begin(), ident.end(), 0u);
    std::vector<std::vector<unsigned>> act(delta.size(), ident);
    return create(std::move(delta), std::move(gamma), std::move(act));
}

bool is_crossed_hom(const GroupAction& A, const CrossedHom& c) {
    if (c.values.size() != A.delta.size())
        return false;
    for (unsigned s = 0; s < A.delta.size(); ++s)
        for (unsigned t = 0; t < A.delta.size(); ++t) {
            unsigned lhs = c.values[A.delta.mul(s, t)];
            unsigned rhs = A.gamma.mul(c.values[s], A.act(s, c.values[t]));
            if (lhs != rhs)
                return false;
        }
    return c.values[A.delta.identity()] == A.gamma.identity();
}

bool is_coboundary(const GroupAction& A, const CrossedHom& c) {
    for (unsigned g = 0; g < A.gamma.size(); ++g) {
        bool ok = true;
        for (unsigned s = 0; s < A.delta.size() && ok; ++s)
            ok = c.values[s] == A.gamma.mul(A.gamma.inv(g), A.act(s, g));
        if (ok)
            return true;
    }
    return false;
}

namespace {

CrossedHom twisted_conjugate(const GroupAction& A, const CrossedHom& c, unsigned g) {
    CrossedHom out;
    out.values.resize(c.values.size());
    unsigned ginv = A.gamma.inv(g);
    for (unsigned s = 0; s < A.delta.size(); ++s)
        out.values[s] = A.gamma.mul(A.gamma.mul(ginv, c.values[s]), A.act(s, g));
    return out;
}

std::vector<CrossedHom> enumerate_cocycles(const GroupAction& A, std::uint64_t ceiling) {
    auto gens = A.delta.generators();
    std::uint64_t budget = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        budget *= A.gamma.size();
        if (budget > ceiling)
            throw Error(ErrorCode::EnumerationBudgetExceeded,
                        "|gamma|^{#generators} exceeds the enumeration ceiling");
    }
    WordTree wt = word_tree(A.delta, gens);

    std::set<CrossedHom> out;
    std::vector<unsigned> choice(gens.size(), 0);
    const unsigned gn = A.gamma.size();
    bool done = false;
    while (!done) {
        // propagate c along the word tree: c(e * g) = c(e) * e(c(g))
        CrossedHom c;
        c.values.assign(A.delta.size(), 0);
        c.values[A.delta.identity()] = A.gamma.identity();
        for (std::size_t oi = 1; oi < wt.order.size(); ++oi) {
            unsigned e = wt.order[oi];
            auto [par, gi] = wt.parent[e];
            c.values[e] = A.gamma.mul(c.values[par], A.act(par, choice[gi]));
        }
        if (is_crossed_hom(A, c))
            out.insert(std::move(c));
        done = true;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (++choice[k] < gn) {
                done = false;
                break;
            }
            choice[k] = 0;
        }
        if (gens.empty())
            break;
    }
    return {out.begin(), out.end()};
}

} // namespace

H1Result h1(const GroupAction& A, std::uint64_t ceiling) {
    auto cocycles = enumerate_cocycles(A, ceiling);
    H1Result res;
    res.cocycles = cocycles.size();
    std::set<CrossedHom> remaining(cocycles.begin(), cocycles.end());
    while (!remaining.empty()) {
        CrossedHom seed = *remaining.begin();
        std::set<CrossedHom> orbit;
        for (unsigned g = 0; g < A.gamma.size(); ++g)
            orbit.insert(twisted_conjugate(A, seed, g));
        CrossedHom rep = *orbit.begin(); // lexicographically least
        res.representatives.push_back(rep);
        res.class_sizes.push_back(orbit.size());
        for (const auto& c : orbit)
            remaining.erase(c);
    }
    return res;
}

LiftClassResult h1_via_lifts(const GroupAction& A, const H1Result& cocycle_route,
                             std::uint64_t ceiling) {
    const unsigned dn = A.delta.size(), gn = A.gamma.size();
    // semidirect product gamma x| delta: (g1,d1)(g2,d2) = (g1 * d1(g2), d1 d2)
    auto enc = [&](unsigned g, unsigned d) { return g * dn + d; };
    const unsigned sn = gn * dn;
    std::vector<std::vector<unsigned>> tbl(sn, std::vector<unsigned>(sn));
    for (unsigned g1 = 0; g1 < gn; ++g1)
        for (unsigned d1 = 0; d1 < dn; ++d1)
            for (unsigned g2 = 0; g2 < gn; ++g2)
                for (unsigned d2 = 0; d2 < dn; ++d2)
                    tbl[enc(g1, d1)][enc(g2, d2)] =
                        enc(A.gamma.mul(g1, A.act(d1, g2)), A.delta.mul(d1, d2));

    auto gens = A.delta.generators();
    std::uint64_t budget = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        budget *= gn;
        if (budget > ceiling)
            throw Error(ErrorCode::EnumerationBudgetExceeded, "lift enumeration too large");
    }
    WordTree wt = word_tree(A.delta, gens);

    auto mul_s = [&](unsigned x, unsigned y) { return tbl[x][y]; };

    // enumerate sections phi: delta -> semidirect with phi(d) = (c_d, d)
    std::vector<std::vector<unsigned>> sections; // phi as vector over delta
    std::vector<unsigned> choice(gens.size(), 0);
    bool done = false;
    while (!done) {
        std::vector<unsigned> phi(dn);
        phi[A.delta.identity()] = enc(A.gamma.identity(), A.delta.identity());
        bool valid = true;
        for (std::size_t oi = 1; oi < wt.order.size(); ++oi) {
            unsigned e = wt.order[oi];
            auto [par, gi] = wt.parent[e];
            phi[e] = mul_s(phi[par], enc(choice[gi], gens[gi]));
        }
        for (unsigned s = 0; s < dn && valid; ++s)
            for (unsigned t = 0; t < dn && valid; ++t)
                valid = phi[A.delta.mul(s, t)] == mul_s(phi[s], phi[t]);
        if (valid)
            sections.push_back(std::move(phi));
        done = true;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (++choice[k] < gn) {
                done = false;
                break;
            }
            choice[k] = 0;
        }
        if (gens.empty())
            break;
    }

    // gamma-conjugacy classes of sections
    std::map<std::vector<unsigned>, std::size_t> class_of;
    std::size_t classes = 0;
    std::set<std::vector<unsigned>> remaining(sections.begin(), sections.end());
    // find inverse inside the semidirect product
    auto inv_s = [&](unsigned x) {
        for (unsigned y = 0; y < sn; ++y)
            if (tbl[x][y] == enc(A.gamma.identity(), A.delta.identity()))
                return y;
        throw Error(ErrorCode::InvalidGroupTable, "semidirect inverse missing");
    };
    while (!remaining.empty()) {
        auto seed = *remaining.begin();
        for (unsigned g = 0; g < gn; ++g) {
            unsigned ge = enc(g, A.delta.identity());
            unsigned gi = inv_s(ge);
            std::vector<unsigned> conj(dn);
            for (unsigned s = 0; s < dn; ++s)
                conj[s] = mul_s(mul_s(gi, seed[s]), ge);
            class_of[conj] = classes;
            remaining.erase(conj);
        }
        ++classes;
    }

    LiftClassResult out;
    out.class_count = classes;
    std::set<std::size_t> images;
    for (const auto& rep : cocycle_route.representatives) {
        std::vector<unsigned> phi(dn);
        for (unsigned s = 0; s < dn; ++s)
            phi[s] = enc(rep.values[s], s);
        auto it = class_of.find(phi);
        if (it == class_of.end()) {
            out.bijective = false;
            return out;
        }
        out.h1_to_lift_class.push_back(it->second);
        images.insert(it->second);
    }
    out.bijective = images.size() == cocycle_route.representatives.size() &&
                    images.size() == classes;
    return out;
}

std::vector<CrossedHom> sha_kernel(const GroupAction& A,
                                   const std::vector<std::vector<unsigned>>& family,
                                   const H1Result& h1_result) {
    for (const auto& sub : family)
        if (!A.delta.is_subgroup(sub))
            throw Error(ErrorCode::NotASubgroup, "family member is not a subgroup");
    std::vector<CrossedHom> kernel;
    for (const auto& rep : h1_result.representatives) {
        bool everywhere_trivial = true;
        for (const auto& sub : family) {
            // restriction is trivial iff c(s) = g^{-1} s(g) on the subgroup
            bool trivial_here = false;
            for (unsigned g = 0; g < A.gamma.size() && !trivial_here; ++g) {
                bool ok = true;
                for (unsigned s : sub) {
                    if (rep.values[s] != A.gamma.mul(A.gamma.inv(g), A.act(s, g))) {
                        ok = false;
                        break;
                    }
                }
                trivial_here = ok;
            }
            if (!trivial_here) {
                everywhere_trivial = false;
                break;
            }
        }
        if (everywhere_trivial)
            kernel.push_back(rep);
    }
    return kernel;
}

CrossedHom baer_sum(const GroupAction& A, const CrossedHom& c1, const CrossedHom& c2) {
    if (!A.gamma.is_abelian())
        throw Error(ErrorCode::NonabelianCoefficients, "Baer sum needs abelian coefficients");
    if (!is_crossed_hom(A, c1) || !is_crossed_hom(A, c2))
        throw Error(ErrorCode::InvalidCocycle, "operand is not a crossed homomorphism");
    CrossedHom out;
    out.values.resize(A.delta.size());
    for (unsigned s = 0; s < A.delta.size(); ++s)
        out.values[s] = A.gamma.mul(c1.values[s], c2.values[s]);
    return out;
}

GroupAction twist(const GroupAction& A, const CrossedHom& c) {
    if (!is_crossed_hom(A, c))
        throw Error(ErrorCode::InvalidCocycle, "twisting class is not a crossed homomorphism");
    std::vector<std::vector<unsigned>> act(A.delta.size(), std::vector<unsigned>(A.gamma.size()));
    for (unsigned s = 0; s < A.delta.size(); ++s) {
        unsigned cs = c.values[s];
        unsigned csi = A.gamma.inv(cs);
        for (unsigned g = 0; g < A.gamma.size(); ++g)
            act[s][g] = A.gamma.mul(A.gamma.mul(cs, A.act(s, g)), csi);
    }
    return GroupAction::create(A.delta, A.gamma, std::move(act));
}

GroupRingElement group_ring_mul(const GroupRingElement& a, const GroupRingElement& b) {
    const auto n = a.coefficients.size();
    if (b.coefficients.size() != n)
        throw Error(ErrorCode::InvalidGroupTable, "group ring order mismatch");
    GroupRingElement out(static_cast<unsigned>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coefficients[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            out.coefficients[(i + j) % n] += a.coefficients[i] * b.coefficients[j];
    }
    return out;
}

KolyvaginCheck kolyvagin_derivative_check(unsigned order) {
    if (order < 2)
        throw Error(ErrorCode::ZeroInput, "order f+1 must be >= 2");
    const unsigned f = order - 1;
    GroupRingElement D(order), gamma_minus_1(order), norm(order), rhs(order);
    for (unsigned i = 0; i <= f; ++i) {
        D.coefficients[i] = i;
        norm.coefficients[i] = 1;
    }
    gamma_minus_1.coefficients[1 % order] += 1;
    gamma_minus_1.coefficients[0] -= 1;
    KolyvaginCheck out{order, group_ring_mul(gamma_minus_1, D), rhs, false};
    out.rhs.coefficients[0] = Int(order);
    for (unsigned i = 0; i <= f; ++i)
        out.rhs.coefficients[i] -= norm.coefficients[i];
    out.holds = out.lhs == out.rhs;
    return out;
}

OrbitCount orbit_count_involution(const FiniteGroup& A) {
    if (!A.is_abelian())
        throw Error(ErrorCode::NonabelianCoefficients, "involution orbit count needs abelian A");
    OrbitCount out;
    std::uint64_t two_torsion = 0;
    for (unsigned a = 0; a < A.size(); ++a)
        if (A.mul(a, a) == A.identity())
            ++two_torsion;
    out.formula = (A.size() + two_torsion) / 2;
    std::vector<bool> seen(A.size(), false);
    for (unsigned a = 0; a < A.size(); ++a) {
        if (seen[a])
            continue;
        seen[a] = true;
        seen[A.inv(a)] = true;
        ++out.enumeration;
    }
    out.agrees = out.formula == out.enumeration;
    return out;
}

std::vector<std::vector<unsigned>> FiniteGroup::automorphisms() const {
    auto gens = generators();
    WordTree wt = word_tree(*this, gens);
    std::vector<std::vector<unsigned>> autos;
    // candidate images per generator must have matching element order
    std::vector<std::vector<unsigned>> candidates(gens.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        unsigned ord = element_order(gens[gi]);
        for (unsigned a = 0; a < size(); ++a)
            if (element_order(a) == ord)
                candidates[gi].push_back(a);
    }
    std::vector<std::size_t> choice(gens.size(), 0);
    bool done = gens.empty();
    while (!done) {
        std::vector<unsigned> phi(size());
        phi[identity_] = identity_;
        for (std::size_t oi = 1; oi < wt.order.size(); ++oi) {
            unsigned e = wt.order[oi];
            auto [par, gi] = wt.parent[e];
            phi[e] = mul(phi[par], candidates[gi][choice[gi]]);
        }
        bool valid = true;
        std::vector<bool> hit(size(), false);
        for (unsigned v : phi) {
            if (hit[v]) {
                valid = false;
                break;
            }
            hit[v] = true;
        }
        for (unsigned a = 0; a < size() && valid; ++a)
            for (unsigned b = 0; b < size() && valid; ++b)
                valid = phi[mul(a, b)] == mul(phi[a], phi[b]);
        if (valid)
            autos.push_back(std::move(phi));
        done = true;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (++choice[k] < candidates[k].size()) {
                done = false;
                break;
            }
            choice[k] = 0;
        }
    }
    if (autos.empty()) { // trivial group
        std::vector<unsigned> ident(size());
        std::iota(ident.begin(), ident.end(), 0u);
        autos.push_back(ident);
    }
    return autos;
}

std::vector<GroupAction> all_actions(const FiniteGroup& delta, const FiniteGroup& gamma) {
    auto autos = gamma.automorphisms();
    const auto an = static_cast<unsigned>(autos.size());
    // Aut(gamma) as a group: composition table
    std::map<std::vector<unsigned>, unsigned> index;
    for (unsigned i = 0; i < an; ++i)
        index[autos[i]] = i;
    std::vector<std::vector<unsigned>> comp(an, std::vector<unsigned>(an));
    for (unsigned i = 0; i < an; ++i)
        for (unsigned j = 0; j < an; ++j) {
            std::vector<unsigned> c(gamma.size());
            for (unsigned g = 0; g < gamma.size(); ++g)
                c[g] = autos[i][autos[j][g]];
            comp[i][j] = index.at(c);
        }
    unsigned aut_id = index.at([&] {
        std::vector<unsigned> ident(gamma.size());
        std::iota(ident.begin(), ident.end(), 0u);
        return ident;
    }());
    auto aut_order = [&](unsigned a) {
        unsigned ord = 1, x = a;
        while (x != aut_id) {
            x = comp[x][a];
            ++ord;
        }
        return ord;
    };

    auto gens = delta.generators();
    WordTree wt = word_tree(delta, gens);
    std::vector<std::vector<unsigned>> candidates(gens.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        unsigned ord = delta.element_order(gens[gi]);
        for (unsigned a = 0; a < an; ++a)
            if (ord % aut_order(a) == 0)
                candidates[gi].push_back(a);
    }

    std::vector<GroupAction> actions;
    std::vector<std::size_t> choice(gens.size(), 0);
    bool done = gens.empty();
    if (done) { // trivial delta
        actions.push_back(GroupAction::trivial(delta, gamma));
        return actions;
    }
    while (!done) {
        std::vector<unsigned> to_aut(delta.size());
        to_aut[delta.identity()] = aut_id;
        for (std::size_t oi = 1; oi < wt.order.size(); ++oi) {
            unsigned e = wt.order[oi];
            auto [par, gi] = wt.parent[e];
            to_aut[e] = comp[to_aut[par]][candidates[gi][choice[gi]]];
        }
        bool valid = true;
        for (unsigned s = 0; s < delta.size() && valid; ++s)
            for (unsigned t = 0; t < delta.size() && valid; ++t)
                valid = to_aut[delta.mul(s, t)] == comp[to_aut[s]][to_aut[t]];
        if (valid) {
            std::vector<std::vector<unsigned>> act(delta.size());
            for (unsigned d = 0; d < delta.size(); ++d)
                act[d] = autos[to_aut[d]];
            actions.push_back(GroupAction::create(delta, gamma, std::move(act)));
        }
        done = true;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (++choice[k] < candidates[k].size()) {
                done = false;
                break;
            }
            choice[k] = 0;
        }
    }
    return actions;
}

} // namespace hlg::cohom
