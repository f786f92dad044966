#include "rayform/forms.hpp"

#include <algorithm>
#include <numeric>

namespace rayform::forms {

QuadForm QuadForm::parse(std::string_view text)
{
    auto v = parse_int_list(text, 3);
    return {v[0], v[1], v[2]};
}

std::string QuadForm::str() const { return to_string(a) + "," + to_string(b) + "," + to_string(c); }

bool is_valid_form(Discriminant const & d, QuadForm const & q)
{
    return q.a > 0 && q.discriminant() == d.dK() && gcd(gcd(q.a, q.b), q.c) == 1;
}

void require_valid_form(Discriminant const & d, QuadForm const & q)
{
    if (!is_valid_form(d, q)) {
        throw ValidationError("'" + q.str() + "' is not a primitive positive definite form of discriminant " +
                              to_string(d.dK()));
    }
}

QuadForm principal_form(Discriminant const & d) { return {1, d.bK(), d.cK()}; }

UnimodMatrix UnimodMatrix::checked(Int p, Int q, Int r, Int s)
{
    UnimodMatrix m{std::move(p), std::move(q), std::move(r), std::move(s)};
    if (m.det() != 1) throw ValidationError("matrix determinant is not 1");
    return m;
}

QuadForm act(QuadForm const & f, UnimodMatrix const & g)
{
    return {f.eval(g.p, g.r), 2 * f.a * g.p * g.q + f.b * (g.p * g.s + g.q * g.r) + 2 * f.c * g.r * g.s,
            f.eval(g.q, g.s)};
}

FieldElement omega(Discriminant const & d, QuadForm const & q)
{
    // sqrt(dK) = 2 tau + bK
    return {Rational(1, q.a), Rational(d.bK() - q.b, 2 * q.a)};
}

bool is_reduced(QuadForm const & q)
{
    if (!(abs(q.b) <= q.a && q.a <= q.c)) return false;
    if ((abs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
    return true;
}

Reduction reduce(QuadForm const & q)
{
    QuadForm f = q;
    UnimodMatrix h = UnimodMatrix::identity();  // f == q^h
    while (true) {
        Int k = floor_div(f.a - f.b, 2 * f.a);
        if (k != 0) {
            f = act(f, UnimodMatrix::T(k));
            h = h * UnimodMatrix::T(k);
        }
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            f = act(f, UnimodMatrix::S());
            h = h * UnimodMatrix::S();
            continue;
        }
        break;
    }
    return {f, h.inverse()};
}

std::vector<QuadForm> reduced_forms(Discriminant const & d)
{
    std::vector<QuadForm> out;
    Int const & D = d.dK();
    for (Int a = 1; 3 * a * a <= -D; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            QuadForm f{a, b, num / (4 * a)};
            if (is_reduced(f) && gcd(gcd(f.a, f.b), f.c) == 1) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<UnimodMatrix> automorphs_by_units(Discriminant const & d, QuadForm const & q)
{
    using qfield::RatMatrix2;
    // [a*omega_Q; a] = P [tau; 1]
    RatMatrix2 P{1, Rational(d.bK() - q.b, 2), 0, Rational(q.a)};
    RatMatrix2 Pinv{1, -P.a12 / P.a22, 0, 1 / P.a22};
    std::vector<UnimodMatrix> out;
    for (auto const & z : qfield::unit_group(d)) {
        Rational m = z.u, n = z.v;
        RatMatrix2 U{n - m * Rational(d.bK()), -m * Rational(d.cK()), m, n};
        RatMatrix2 g = P * U * Pinv;
        UnimodMatrix h{to_integer(g.a11), to_integer(g.a12), to_integer(g.a21), to_integer(g.a22)};
        if (h.det() != 1 || act(q, h) != q) throw ConsistencyError("unit conjugate is not an automorph of " + q.str());
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<UnimodMatrix> automorphs_by_search(QuadForm const & q)
{
    auto [r, w] = reduce(q);
    std::vector<UnimodMatrix> out;
    for (int p = -2; p <= 2; ++p)
        for (int s = -2; s <= 2; ++s)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c) {
                    UnimodMatrix h{p, b, c, s};
                    if (h.det() == 1 && act(r, h) == r) out.push_back(w.inverse() * h * w);
                }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<UnimodMatrix> automorphs(Discriminant const & d, QuadForm const & q)
{
    auto by_units = automorphs_by_units(d, q);
    if (d.dK() == -3 || d.dK() == -4) {
        auto by_search = automorphs_by_search(q);
        if (by_search != by_units) throw ConsistencyError("automorph constructions disagree for " + q.str());
        return by_search;
    }
    return by_units;
}

namespace {

UnimodMatrix complete_first_column(Int const & x0, Int const & y0)
{
    auto [g, x, y] = ext_gcd(x0, y0);
    return UnimodMatrix::checked(x0, -y, y0, x);
}

}  // namespace

Normalized coprime_normalize(QuadForm const & q, Int const & modulus)
{
    if (modulus < 1) throw ValidationError("coprime_normalize: modulus must be positive");
    if (gcd(q.a, modulus) == 1) return {q, UnimodMatrix::identity()};
    for (long long k = 1; k <= 100000; ++k) {
        for (long long y = 0; y <= k; ++y) {
            for (long long x = -k; x <= k; ++x) {
                if (std::max(std::abs(x), y) != k) continue;
                if (y == 0 && x <= 0) continue;
                if (std::gcd(x, y) != 1) continue;
                if (gcd(q.eval(x, y), modulus) != 1) continue;
                UnimodMatrix g = complete_first_column(x, y);
                return {act(q, g), g};
            }
        }
    }
    throw ConsistencyError("coprime_normalize: no value coprime to the modulus found for " + q.str());
}

}  // namespace rayform::forms
