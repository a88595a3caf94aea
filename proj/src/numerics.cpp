#include "hlg/numerics.hpp"

#include <cmath>
#include <limits>

namespace hlg::numerics {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 30);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
    // x = c + h*tanh(pi/2 sinh t), trapezoid in t with successive halving
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const double tmax = 4.0;
    auto g = [&](double t) {
        double st = std::sinh(t);
        double x = c + hw * std::tanh(0.5 * M_PI * st);
        double w = hw * 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(0.5 * M_PI * st), 2);
        if (x <= a || x >= b || !std::isfinite(w) || w == 0)
            return 0.0;
        double v = f(x) * w;
        return std::isfinite(v) ? v : 0.0;
    };
    double h = 1.0;
    double sum = g(0.0);
    for (double t = h; t <= tmax; t += h)
        sum += g(t) + g(-t);
    double prev = sum * h;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= tmax; t += 2 * h)
            add += g(t) + g(-t);
        sum += add;
        double cur = sum * h;
        if (level >= 2 && std::abs(cur - prev) < tol)
            return cur;
        prev = cur;
    }
    return prev;
}

double exp_sinh(const std::function<double(double)>& g0, double tol) {
    // h = exp(pi/2 sinh t)
    const double tmax = 5.0;
    auto g = [&](double t) {
        double st = std::sinh(t);
        double e = std::exp(0.5 * M_PI * st);
        double w = e * 0.5 * M_PI * std::cosh(t);
        if (!std::isfinite(w) || w == 0)
            return 0.0;
        double v = g0(e) * w;
        return std::isfinite(v) ? v : 0.0;
    };
    double h = 1.0;
    double sum = g(0.0);
    for (double t = h; t <= tmax; t += h)
        sum += g(t) + g(-t);
    double prev = sum * h;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= tmax; t += 2 * h)
            add += g(t) + g(-t);
        sum += add;
        double cur = sum * h;
        if (level >= 2 && std::abs(cur - prev) < tol)
            return cur;
        prev = cur;
    }
    return prev;
}

double upper_incomplete_gamma(double s, double x) {
    if (x <= 0)
        return std::tgamma(s);
    if (x < s + 1.0) {
        // Gamma(s) - lower incomplete via the regularized series
        double term = 1.0 / s;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (s + n);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum))
                break;
        }
        return std::tgamma(s) - sum * std::exp(-x + s * std::log(x));
    }
    // Lentz continued fraction
    const double tiny = std::numeric_limits<double>::min() * 1e10;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return std::exp(-x + s * std::log(x)) * h;
}

} // namespace hlg::numerics
