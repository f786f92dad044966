#include "rayform/arith.hpp"

#include <limits>
#include <vector>

namespace rayform {

Int abs(Int const & x) { return x < 0 ? Int(-x) : x; }

Int gcd(Int a, Int b)
{
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Int r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Int lcm(Int const & a, Int const & b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

Int floor_mod(Int const & x, Int const & m)
{
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int floor_div(Int const & a, Int const & b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Bezout ext_gcd(Int const & a, Int const & b)
{
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

Int inv_mod(Int const & a, Int const & m)
{
    if (m == 1) return 0;
    auto [g, x, y] = ext_gcd(floor_mod(a, m), m);
    if (g != 1) {
        throw ValidationError("inv_mod: " + to_string(a) + " is not invertible modulo " + to_string(m));
    }
    return floor_mod(x, m);
}

Int crt(Int const & r1, Int const & m1, Int const & r2, Int const & m2)
{
    // x = r1 + m1 * k,  m1 * k = r2 - r1 (mod m2)
    Int k = floor_mod((r2 - r1) * inv_mod(m1, m2), m2);
    return floor_mod(r1 + m1 * k, m1 * m2);
}

bool is_squarefree(Int n)
{
    n = abs(n);
    if (n == 0) return false;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

long long euler_phi(long long n)
{
    long long result = n;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

Int floor(Rational const & x)
{
    return floor_div(numerator(x), denominator(x));
}

Int round_half_up(Rational const & x)
{
    return floor(x + Rational(1, 2));
}

bool is_integer(Rational const & x) { return denominator(x) == 1; }

Int to_integer(Rational const & x)
{
    if (!is_integer(x)) throw ConsistencyError("expected an integer, got " + to_string(x));
    return numerator(x);
}

long long to_ll(Int const & x)
{
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min()) {
        throw ValidationError("integer out of 64-bit range: " + to_string(x));
    }
    return x.convert_to<long long>();
}

Int parse_int(std::string_view text)
{
    std::string s(text);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw ValidationError("malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw ValidationError("malformed integer '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Int(s);
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(Int const & x) { return x.str(); }

std::string to_string(Rational const & x)
{
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::vector<Int> parse_int_list(std::string_view text, std::size_t count)
{
    std::vector<Int> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_int(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != count) {
        throw ValidationError("expected " + std::to_string(count) + " comma-separated integers, got '" +
                              std::string(text) + "'");
    }
    return out;
}

}  // namespace rayform
