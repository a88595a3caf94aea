#include "hlg/padic.hpp"

#include "hlg/errors.hpp"

#include <sstream>

namespace hlg::padic {

Rat FactoredNorm::reconstruct() const {
    Rat r(sign, 1);
    for (const auto& [p, e] : exponents) {
        if (e >= 0)
            r *= Rat(pow_int(p, static_cast<unsigned long>(e)), 1);
        else
            r *= Rat(1, pow_int(p, static_cast<unsigned long>(-e)));
    }
    return r;
}

PAdicValuation valuation(const Rat& r, const Int& p) {
    require_prime(p);
    PAdicValuation v{p, 0, false};
    if (r == 0) {
        v.infinite = true;
        return v;
    }
    v.value = static_cast<long>(valuation_int(r.get_num(), p)) -
              static_cast<long>(valuation_int(r.get_den(), p));
    return v;
}

ProductFormulaResult verify_product_formula(const Rat& r) {
    if (r == 0)
        throw Error(ErrorCode::ZeroInput, "product formula needs r != 0");
    ProductFormulaResult out;
    out.certificate.sign = sgn(r) < 0 ? -1 : 1;
    out.certificate.archimedean = abs(r);

    for (const auto& [p, e] : factorize(r.get_num()))
        out.certificate.exponents[p] += static_cast<long>(e);
    for (const auto& [p, e] : factorize(r.get_den()))
        out.certificate.exponents[p] -= static_cast<long>(e);
    for (auto it = out.certificate.exponents.begin(); it != out.certificate.exponents.end();)
        it = it->second == 0 ? out.certificate.exponents.erase(it) : std::next(it);

    // |r|_p = p^{-v_p(r)}, all multiplied exactly
    Rat product = out.certificate.archimedean;
    for (const auto& [p, e] : out.certificate.exponents) {
        if (e >= 0)
            product /= Rat(pow_int(p, static_cast<unsigned long>(e)), 1);
        else
            product *= Rat(pow_int(p, static_cast<unsigned long>(-e)), 1);
    }
    out.product = product;
    out.holds = (product == 1);
    return out;
}

Polynomial::Polynomial(std::vector<Int> coefficients) : coeffs_(std::move(coefficients)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Int Polynomial::operator()(const Int& x) const {
    Int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Int> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d.push_back(Int(static_cast<unsigned long>(i)) * coeffs_[i]);
    if (d.empty())
        d.push_back(0);
    return Polynomial(std::move(d));
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0 && coeffs_.size() > 1)
            continue;
        if (!first)
            os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0)
            os << "-";
        Int a = abs(coeffs_[i]);
        if (i == 0 || a != 1)
            os << a.get_str();
        if (i >= 1)
            os << "x";
        if (i >= 2)
            os << "^" << i;
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

HenselLift hensel_lift(const Polynomial& f, const Int& p, const Int& root, unsigned long k,
                       unsigned long target_k) {
    require_prime(p);
    if (k == 0)
        throw Error(ErrorCode::NotLiftable, "starting precision k must be >= 1");

    Int pk = pow_int(p, k);
    Int x = root % pk;
    if (x < 0)
        x += pk;

    Int fx = f(x);
    if (fx % pk != 0)
        throw Error(ErrorCode::NotLiftable,
                    "f(root) != 0 mod p^" + std::to_string(k));

    Int dfx = f.derivative()(x);
    if (dfx == 0)
        throw Error(ErrorCode::NotLiftable, "f'(root) = 0");
    unsigned long m = valuation_int(dfx, p);
    if (k <= 2 * m)
        throw Error(ErrorCode::NotLiftable,
                    "strong Hensel needs k > 2 v_p(f'(root)): k = " + std::to_string(k) +
                        ", m = " + std::to_string(m));

    if (target_k <= k) {
        Int mod = pow_int(p, target_k);
        return {x % mod, target_k, m};
    }

    // Newton iteration; precision k -> 2k - 2m per step.
    Polynomial df = f.derivative();
    unsigned long prec = k;
    Int pm = pow_int(p, m);
    while (prec < target_k + m) {
        unsigned long next = std::min(2 * prec - 2 * m, target_k + m);
        Int modulus = pow_int(p, next);
        Int fv = f(x) % modulus;
        Int dv = df(x);
        // dv = p^m * unit; divide the correction exactly by p^m
        Int unit = dv / pm;
        Int unit_inv;
        Int mod_red = pow_int(p, next - m);
        if (mpz_invert(unit_inv.get_mpz_t(), Int(unit % mod_red).get_mpz_t(),
                       mod_red.get_mpz_t()) == 0)
            throw Error(ErrorCode::NotLiftable, "derivative unit not invertible");
        Int num = fv / pm; // exact: v_p(f(x)) >= prec > m
        Int delta = (num * unit_inv) % mod_red;
        x = (x - delta) % modulus;
        if (x < 0)
            x += modulus;
        prec = next;
    }
    Int mod = pow_int(p, target_k);
    Int result = x % mod;
    if (f(result) % mod != 0)
        throw Error(ErrorCode::NotLiftable, "lift verification failed");
    return {result, target_k, m};
}

} // namespace hlg::padic
