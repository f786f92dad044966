#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rayform {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Bad input: malformed text, invalid discriminant, form or ideal, violated
/// preconditions. The CLI maps this to exit status 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An internal cross-check failed. Never expected; CLI exit status 3.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

Int abs(Int const & x);
Int gcd(Int a, Int b);
Int lcm(Int const & a, Int const & b);

/// Representative of x modulo m in [0, m); m > 0.
Int floor_mod(Int const & x, Int const & m);
/// floor(a / b) for b != 0.
Int floor_div(Int const & a, Int const & b);

struct Bezout {
    Int g;  // gcd, nonnegative
    Int x;
    Int y;  // a*x + b*y == g
};
Bezout ext_gcd(Int const & a, Int const & b);

/// Inverse of a modulo m in [0, m); throws ValidationError if gcd(a, m) != 1.
Int inv_mod(Int const & a, Int const & m);

/// x with x = r1 (mod m1), x = r2 (mod m2), 0 <= x < m1*m2, for coprime moduli.
Int crt(Int const & r1, Int const & m1, Int const & r2, Int const & m2);

bool is_squarefree(Int n);
long long euler_phi(long long n);

Int floor(Rational const & x);
Int round_half_up(Rational const & x);
bool is_integer(Rational const & x);
Int to_integer(Rational const & x);  // throws ConsistencyError if not integral

long long to_ll(Int const & x);  // throws ValidationError on overflow

Int parse_int(std::string_view text);
Rational parse_rational(std::string_view text);
std::string to_string(Int const & x);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(Rational const & x);

/// Splits "a,b,c" into exactly `count` integers.
std::vector<Int> parse_int_list(std::string_view text, std::size_t count);

}  // namespace rayform
