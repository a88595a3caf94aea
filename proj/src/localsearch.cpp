#include "hlg/localsearch.hpp"

#include "hlg/errors.hpp"

#include <algorithm>
#include <optional>

namespace hlg::localsearch {

namespace {

struct Node {
    std::vector<Int> x;  // residues mod p^level, canonical: first unit coord == 1
    unsigned pivot;      // index of that coordinate
};

Int eval_form(const std::vector<Int>& a, unsigned d, const std::vector<Int>& x, const Int& mod) {
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int t = 1;
        for (unsigned r = 0; r < d; ++r)
            t = t * x[i] % mod;
        acc = (acc + a[i] * t) % mod;
    }
    if (acc < 0)
        acc += mod;
    return acc;
}

} // namespace

SearchResult search(const std::vector<Int>& coefficients, unsigned degree, const Int& p,
                    unsigned max_level, std::uint64_t budget) {
    const std::size_t n = coefficients.size();
    SearchResult res;
    res.exhausted_precision = max_level;

    std::vector<Int> ppow(max_level + 2);
    ppow[0] = 1;
    for (unsigned i = 1; i <= max_level + 1; ++i)
        ppow[i] = ppow[i - 1] * p;

    std::uint64_t nodes = 0;
    auto charge = [&](std::uint64_t k) {
        nodes += k;
        if (nodes > budget)
            throw Error(ErrorCode::EnumerationBudgetExceeded,
                        "local search exceeded " + std::to_string(budget) + " classes at p = " +
                            p.get_str());
    };

    // Certification: some coordinate direction satisfies the strong-Hensel
    // inequality level > 2 * v_p(dF/dx_i) with the valuation exactly visible
    // in the residue.
    auto certify = [&](const Node& nd, unsigned level) -> std::optional<unsigned> {
        const Int& mod = ppow[level];
        for (std::size_t i = 0; i < n; ++i) {
            Int g = Int(degree) * coefficients[i] % mod;
            for (unsigned r = 0; r + 1 < degree; ++r)
                g = g * nd.x[i] % mod;
            if (g == 0)
                continue;
            unsigned m = valuation_int(g, p);
            if (level > 2 * m)
                return m;
        }
        return std::nullopt;
    };

    // Level 1: canonical projective representatives over F_p.
    std::vector<Node> frontier;
    {
        std::vector<Int> x(n, 0);
        for (unsigned pivot = 0; pivot < n; ++pivot) {
            std::fill(x.begin(), x.end(), Int(0));
            x[pivot] = 1;
            // free coordinates after the pivot
            std::vector<std::size_t> free_idx;
            for (std::size_t j = pivot + 1; j < n; ++j)
                free_idx.push_back(j);
            std::uint64_t count = 1;
            for (std::size_t k = 0; k < free_idx.size(); ++k) {
                if (p.fits_ulong_p())
                    count *= p.get_ui();
                else
                    count = budget + 1;
            }
            charge(count);
            // odometer over the free coordinates
            bool done = false;
            while (!done) {
                if (eval_form(coefficients, degree, x, ppow[1]) == 0)
                    frontier.push_back({x, pivot});
                done = true;
                for (std::size_t k = 0; k < free_idx.size(); ++k) {
                    Int& c = x[free_idx[k]];
                    c += 1;
                    if (c < p) {
                        done = false;
                        break;
                    }
                    c = 0;
                }
                if (free_idx.empty())
                    break;
            }
        }
    }

    for (unsigned level = 1; level <= max_level; ++level) {
        // certify or refine
        std::vector<Node> next;
        for (const Node& nd : frontier) {
            if (auto m = certify(nd, level)) {
                res.soluble = true;
                res.witness = nd.x;
                res.witness_precision = level;
                res.derivative_valuation = *m;
                res.nodes_explored = nodes;
                return res;
            }
            if (level == max_level)
                continue; // cannot certify and no room to refine: class dies by the bound
            // refinement survives only if F(x) = 0 mod p^{level+1}; the linear
            // digit equation is degenerate here (all gradients = 0 mod p,
            // otherwise certify() would have fired).
            if (eval_form(coefficients, degree, nd.x, ppow[level + 1]) != 0)
                continue;
            std::uint64_t fan = 1;
            for (std::size_t k = 0; k + 1 < n; ++k)
                fan = p.fits_ulong_p() ? fan * p.get_ui() : budget + 1;
            charge(fan);
            std::vector<Int> t(n, 0);
            bool done = false;
            while (!done) {
                Node child = nd;
                for (std::size_t i = 0; i < n; ++i)
                    child.x[i] += ppow[level] * t[i];
                next.push_back(std::move(child));
                done = true;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == nd.pivot)
                        continue; // canonical section: pivot digit stays 0
                    t[k] += 1;
                    if (t[k] < p) {
                        done = false;
                        break;
                    }
                    t[k] = 0;
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty())
            break;
    }

    res.soluble = false;
    res.nodes_explored = nodes;
    return res;
}

} // namespace hlg::localsearch
