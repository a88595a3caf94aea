#include "hlg/integers.hpp"

#include "hlg/errors.hpp"

#include <algorithm>
#include <numeric>

namespace hlg {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::PrimeBoundExceeded: return "PrimeBoundExceeded";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotLiftable: return "NotLiftable";
    case ErrorCode::TooFewVariables: return "TooFewVariables";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::SingularForm: return "SingularForm";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::BadReductionPrime: return "BadReductionPrime";
    case ErrorCode::BadPrimeNotExcluded: return "BadPrimeNotExcluded";
    case ErrorCode::NonPositiveConductor: return "NonPositiveConductor";
    case ErrorCode::InsufficientTerms: return "InsufficientTerms";
    case ErrorCode::OutOfConvergenceRegion: return "OutOfConvergenceRegion";
    case ErrorCode::NoConsistentCandidate: return "NoConsistentCandidate";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NonabelianCoefficients: return "NonabelianCoefficients";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::InvalidGroupTable: return "InvalidGroupTable";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
    }
}

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Int num, den;
    if (slash == std::string::npos) {
        num = parse_int(s);
        den = 1;
    } else {
        num = parse_int(s.substr(0, slash));
        den = parse_int(s.substr(slash + 1));
    }
    if (den == 0)
        throw Error(ErrorCode::ZeroInput, "zero denominator in '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace {

Int mul_mod(const Int& a, const Int& b, const Int& n) { return a * b % n; }

Int pow_mod(Int base, Int exp, const Int& n) {
    Int result = 1;
    base %= n;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t()))
            result = mul_mod(result, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long r) {
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true; // a witnesses compositeness
}

} // namespace

bool is_prime(const Int& n) {
    static const Int kBound("3317044064679887385961981"); // witness set valid below this
    if (n >= kBound)
        throw Error(ErrorCode::PrimeBoundExceeded,
                    "primality certification supported only below 3.317e24, got " + n.get_str());
    if (n < 2)
        return false;
    static const int kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : kSmall) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    Int d = n - 1;
    unsigned long r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    for (int a : kSmall)
        if (miller_rabin_witness(n, a, d, r))
            return false;
    return true;
}

void require_prime(const Int& p) {
    if (p < 2 || !is_prime(p))
        throw Error(ErrorCode::CompositeModulus, p.get_str() + " is not prime");
}

namespace {

Int pollard_rho(const Int& n) {
    if (n % 2 == 0)
        return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEu);
    while (true) {
        Int x = rng.get_z_range(n - 2) + 2;
        Int y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0)
                break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n)
            return d;
    }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::map<Int, unsigned> factorize(Int n) {
    if (n == 0)
        throw Error(ErrorCode::ZeroInput, "cannot factor 0");
    std::map<Int, unsigned> out;
    if (n < 0)
        n = -n;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (n % p == 0) {
            out[Int(static_cast<unsigned long>(p))] += 1;
            n /= static_cast<unsigned long>(p);
        }
    }
    for (std::uint64_t p = 17; p * p <= 100000000ull && Int(static_cast<unsigned long>(p)) * Int(static_cast<unsigned long>(p)) <= n; p += 2) {
        while (n % static_cast<unsigned long>(p) == 0) {
            out[Int(static_cast<unsigned long>(p))] += 1;
            n /= static_cast<unsigned long>(p);
        }
    }
    if (n > 1)
        factor_into(n, out);
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0)
        return 0;
    Int result = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorize(n))
        if (e % 2 == 1)
            result *= p;
    return result;
}

Int cubefree_part(const Int& n) {
    if (n == 0)
        return 0;
    Int result = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorize(n))
        result *= pow_int(p, e % 3);
    return result;
}

unsigned valuation_int(const Int& n, const Int& p) {
    Int m = abs(n);
    unsigned v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int legendre(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0)
        r += p;
    if (r == 0)
        return 0;
    Int e = pow_mod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

Int sqrt_mod(const Int& a, const Int& p) {
    Int n = a % p;
    if (n < 0)
        n += p;
    if (n == 0)
        return 0;
    if (p % 4 == 3)
        return pow_mod(n, (p + 1) / 4, p);
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    Int z = 2;
    while (legendre(z, p) != -1)
        ++z;
    Int m = s, c = pow_mod(z, q, p), t = pow_mod(n, q, p), r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - Int(i) - 1; ++j)
            b = mul_mod(b, b, p);
        m = Int(i);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

bool is_perfect_cube(const Int& n, Int& r) {
    if (n == 0) {
        r = 0;
        return true;
    }
    Int m = abs(n);
    Int root;
    mpz_root(root.get_mpz_t(), m.get_mpz_t(), 3);
    if (root * root * root != m)
        return false;
    r = n < 0 ? -root : root;
    return true;
}

Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t bound) {
    std::vector<bool> sieve(bound + 1, true);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (!sieve[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            sieve[j] = false;
    }
    return primes;
}

std::int64_t to_i64(const Int& n) {
    if (!n.fits_slong_p())
        throw Error(ErrorCode::ParseError, "value out of 64-bit range: " + n.get_str());
    return n.get_si();
}

} // namespace hlg
