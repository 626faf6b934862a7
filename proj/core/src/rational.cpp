#include "polyflow/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace polyflow {

namespace {

bool valid_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_integer_text(num) || !valid_integer_text(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    return q.get_den() == 1;
}

Rational best_rational(double value, long max_den) {
    if (!std::isfinite(value)) throw std::invalid_argument("best_rational: non-finite input");
    if (max_den < 1) throw std::invalid_argument("best_rational: max_den must be positive");
    // Convergents h/k of the continued fraction of value.
    long double x = value;
    long long h_prev = 1, h = static_cast<long long>(std::floor(x));
    long long k_prev = 0, k = 1;
    long double frac = x - std::floor(x);
    while (frac > 1e-18L) {
        long double inv = 1.0L / frac;
        long long a = static_cast<long long>(std::floor(inv));
        frac = inv - a;
        long long k_next = a * k + k_prev;
        if (k_next > max_den) {
            // Largest semiconvergent still within the bound.
            long long m = (max_den - k_prev) / k;
            if (2 * m >= a) {
                long long hs = m * h + h_prev, ks = m * k + k_prev;
                long double es = std::fabs(x - static_cast<long double>(hs) / ks);
                long double ec = std::fabs(x - static_cast<long double>(h) / k);
                if (es < ec) { h = hs; k = ks; }
            }
            break;
        }
        long long h_next = a * h + h_prev;
        h_prev = h; h = h_next;
        k_prev = k; k = k_next;
        if (std::fabs(x - static_cast<long double>(h) / k) < 1e-18L) break;
    }
    Rational q(mpz_class(std::to_string(h)), mpz_class(std::to_string(k)));
    q.canonicalize();
    return q;
}

}  // namespace polyflow
