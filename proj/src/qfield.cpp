#include "rayform/qfield.hpp"

#include <algorithm>
#include <cmath>

namespace rayform::qfield {

Discriminant Discriminant::make(Int const & d)
{
    if (d >= 0) throw ValidationError("discriminant must be negative, got " + to_string(d));
    Int r = floor_mod(d, 4);
    if (r == 1) {
        if (!is_squarefree(d)) throw ValidationError("discriminant " + to_string(d) + " is not fundamental");
        return Discriminant(d, 1, (1 - d) / 4);
    }
    if (r == 0) {
        Int m = d / 4;
        Int mr = floor_mod(m, 4);
        if (!(mr == 2 || mr == 3) || !is_squarefree(m)) {
            throw ValidationError("discriminant " + to_string(d) + " is not fundamental");
        }
        return Discriminant(d, 0, -m);
    }
    throw ValidationError("discriminant " + to_string(d) + " is not 0 or 1 mod 4");
}

Discriminant make_discriminant(Int const & d) { return Discriminant::make(d); }

int Discriminant::unit_count() const
{
    if (d_ == -4) return 4;
    if (d_ == -3) return 6;
    return 2;
}

FieldElement operator+(FieldElement const & x, FieldElement const & y) { return {x.u + y.u, x.v + y.v}; }
FieldElement operator-(FieldElement const & x, FieldElement const & y) { return {x.u - y.u, x.v - y.v}; }
FieldElement operator-(FieldElement const & x) { return {-x.u, -x.v}; }
FieldElement scale(Rational const & k, FieldElement const & x) { return {k * x.u, k * x.v}; }

FieldElement mul(Discriminant const & d, FieldElement const & x, FieldElement const & y)
{
    // tau^2 = -bK*tau - cK
    Rational uu = x.u * y.u;
    return {x.u * y.v + x.v * y.u - Rational(d.bK()) * uu, x.v * y.v - Rational(d.cK()) * uu};
}

FieldElement conj(Discriminant const & d, FieldElement const & x)
{
    return {-x.u, x.v - x.u * Rational(d.bK())};
}

Rational norm(Discriminant const & d, FieldElement const & x)
{
    return Rational(d.cK()) * x.u * x.u - Rational(d.bK()) * x.u * x.v + x.v * x.v;
}

FieldElement div(Discriminant const & d, FieldElement const & x, FieldElement const & y)
{
    if (y.is_zero()) throw ValidationError("division by zero in K");
    return scale(1 / norm(d, y), mul(d, x, conj(d, y)));
}

int imag_sign(FieldElement const & x) { return x.u > 0 ? 1 : (x.u < 0 ? -1 : 0); }

Rational real_part(Discriminant const & d, FieldElement const & x)
{
    return x.v - x.u * Rational(d.bK()) / 2;
}

RatMatrix2 to_rational(IntMatrix2 const & m)
{
    return {Rational(m.a11), Rational(m.a12), Rational(m.a21), Rational(m.a22)};
}

FieldElement mobius(Discriminant const & d, RatMatrix2 const & m, FieldElement const & z)
{
    if (m.det() <= 0) throw ValidationError("mobius: matrix determinant must be positive");
    if (imag_sign(z) <= 0) throw ValidationError("mobius: point must lie in the upper half-plane");
    FieldElement num{m.a11 * z.u, m.a11 * z.v + m.a12};
    FieldElement den{m.a21 * z.u, m.a21 * z.v + m.a22};
    if (den.is_zero()) throw ValidationError("mobius: degenerate denominator");
    return div(d, num, den);
}

IdealTriple IdealTriple::parse(std::string_view text)
{
    auto v = parse_int_list(text, 3);
    return {v[0], v[1], v[2]};
}

std::string IdealTriple::str() const { return to_string(a1) + "," + to_string(a2) + "," + to_string(c); }

bool is_valid_triple(Discriminant const & d, IdealTriple const & t)
{
    if (!(t.a1 > 0 && t.a1 <= t.c && t.a2 >= 0 && t.a2 < t.c)) return false;
    if (t.c % t.a1 != 0 || t.a2 % t.a1 != 0) return false;
    // a1*[tau + a2/a1, c/a1] is an ideal iff c/a1 divides N(tau + a2/a1)
    Int b = t.a2 / t.a1;
    Int n = d.cK() - d.bK() * b + b * b;
    return n % (t.c / t.a1) == 0;
}

void require_valid_triple(Discriminant const & d, IdealTriple const & t)
{
    if (!is_valid_triple(d, t)) {
        throw ValidationError("'" + t.str() + "' is not a canonical ideal triple for dK = " + to_string(d.dK()));
    }
}

LatticeBasis to_lattice(IdealTriple const & t)
{
    return {{Rational(t.a1), Rational(t.a2), Rational(0), Rational(t.c)}};
}

bool contains(IdealTriple const & t, FieldElement const & x)
{
    if (!x.is_integral()) return false;
    Int u = numerator(x.u);
    if (u % t.a1 != 0) return false;
    Int e = u / t.a1;
    return (numerator(x.v) - e * t.a2) % t.c == 0;
}

FieldElement reduce_mod(IdealTriple const & t, FieldElement const & x)
{
    if (!x.is_integral()) throw ValidationError("reduce_mod: element is not integral");
    Int u = numerator(x.u);
    Int e = floor_div(u, t.a1);
    Int v = numerator(x.v) - e * t.a2;
    return {Rational(u - e * t.a1), Rational(floor_mod(v, t.c))};
}

namespace {

// Upper-triangular basis {(a1, a2), (0, c)} of the Z-span of integer vectors.
IdealTriple hermite_basis(std::span<FieldElement const> gens)
{
    Int row_u = 0, row_v = 0, c = 0;
    for (auto const & g : gens) {
        if (!g.is_integral()) throw ValidationError("lattice generator is not integral");
        Int gu = numerator(g.u), gv = numerator(g.v);
        if (gu == 0) {
            c = gcd(c, gv);
            continue;
        }
        auto [h, s, t] = ext_gcd(row_u, gu);
        Int new_u = s * row_u + t * gu;
        Int new_v = s * row_v + t * gv;
        // the complementary combination has zero tau-coordinate
        Int rest_v = (gu / h) * row_v - (row_u / h) * gv;
        c = gcd(c, rest_v);
        row_u = std::move(new_u);
        row_v = std::move(new_v);
    }
    if (row_u == 0 || c == 0) throw ValidationError("lattice generators have rank < 2");
    if (row_u < 0) {
        row_u = -row_u;
        row_v = -row_v;
    }
    return {row_u, floor_mod(row_v, c), c};
}

}  // namespace

IdealTriple canonicalize_generators(Discriminant const & d, std::span<FieldElement const> gens)
{
    IdealTriple t = hermite_basis(gens);
    auto tau = FieldElement::tau();
    if (!contains(t, mul(d, tau, t.first())) || !contains(t, mul(d, tau, t.second()))) {
        throw ValidationError("lattice is not an ideal of O_K");
    }
    if (!is_valid_triple(d, t)) throw ConsistencyError("canonical basis violates divisibility conditions");
    return t;
}

IdealTriple canonicalize_ideal(Discriminant const & d, LatticeBasis const & lattice)
{
    FieldElement gens[] = {lattice.first(), lattice.second()};
    return canonicalize_generators(d, gens);
}

IdealTriple ideal_product(Discriminant const & d, IdealTriple const & s, IdealTriple const & t)
{
    FieldElement gens[] = {mul(d, s.first(), t.first()), mul(d, s.first(), t.second()),
                           mul(d, s.second(), t.first()), mul(d, s.second(), t.second())};
    return canonicalize_generators(d, gens);
}

IdealTriple ideal_sum(Discriminant const & d, IdealTriple const & s, IdealTriple const & t)
{
    FieldElement gens[] = {s.first(), s.second(), t.first(), t.second()};
    return canonicalize_generators(d, gens);
}

IdealTriple ideal_conj(Discriminant const & d, IdealTriple const & t)
{
    FieldElement gens[] = {conj(d, t.first()), t.second()};
    return canonicalize_generators(d, gens);
}

Rational ideal_norm(LatticeBasis const & lattice)
{
    Rational det = lattice.m.det();
    return det < 0 ? Rational(-det) : det;
}

bool is_coprime(Discriminant const & d, IdealTriple const & s, IdealTriple const & t)
{
    return ideal_sum(d, s, t) == IdealTriple::unit();
}

namespace {

// <x, y> = (N(x + y) - N(x) - N(y)) / 2, the bilinear form of the norm.
Rational norm_pairing(Discriminant const & d, FieldElement const & x, FieldElement const & y)
{
    return (norm(d, x + y) - norm(d, x) - norm(d, y)) / 2;
}

double to_double(Rational const & x) { return x.convert_to<double>(); }

}  // namespace

std::vector<FieldElement> minimal_norm_elements(Discriminant const & d, LatticeBasis const & lattice)
{
    Rational target = ideal_norm(lattice);
    if (target == 0) throw ValidationError("minimal_norm_elements: degenerate lattice");

    // Lagrange-reduce the basis so the search box stays small.
    FieldElement e1 = lattice.first(), e2 = lattice.second();
    while (true) {
        if (norm(d, e1) > norm(d, e2)) std::swap(e1, e2);
        Int mu = round_half_up(norm_pairing(d, e1, e2) / norm(d, e1));
        if (mu == 0) break;
        e2 = e2 - scale(Rational(mu), e1);
    }

    // N(x*e1 + y*e2) = A x^2 + 2 B x y + C y^2
    Rational A = norm(d, e1), B = norm_pairing(d, e1, e2), C = norm(d, e2);
    Rational minor = A * C - B * B;
    long long ymax = static_cast<long long>(std::floor(std::sqrt(to_double(target * A / minor)))) + 1;

    std::vector<FieldElement> found;
    for (long long y = -ymax; y <= ymax; ++y) {
        Rational yr(y);
        Rational rem = target * A - minor * yr * yr;  // A * (target - C' y^2)
        if (rem < 0) continue;
        double centre = -to_double(B * yr / A);
        double radius = std::sqrt(to_double(rem)) / to_double(A);
        long long xlo = static_cast<long long>(std::floor(centre - radius)) - 1;
        long long xhi = static_cast<long long>(std::ceil(centre + radius)) + 1;
        for (long long x = xlo; x <= xhi; ++x) {
            if (x == 0 && y == 0) continue;
            FieldElement lam = scale(Rational(x), e1) + scale(yr, e2);
            if (norm(d, lam) == target) found.push_back(lam);
        }
    }
    std::sort(found.begin(), found.end(), [](FieldElement const & p, FieldElement const & q) {
        return std::tie(p.u, p.v) < std::tie(q.u, q.v);
    });
    return found;
}

std::vector<FieldElement> unit_group(Discriminant const & d)
{
    return minimal_norm_elements(d, to_lattice(IdealTriple::unit()));
}

bool is_mult_congruent_one(Discriminant const & d, FieldElement const & x, IdealTriple const & n)
{
    if (x.is_zero()) throw ValidationError("is_mult_congruent_one: zero element");
    Int m = lcm(denominator(x.u), denominator(x.v));
    if (gcd(m, n.c) != 1) {
        throw ValidationError("is_mult_congruent_one: denominator shares a factor with the modulus");
    }
    FieldElement alpha = scale(Rational(m), x);
    FieldElement gens[] = {alpha, mul(d, FieldElement::tau(), alpha), n.first(), n.second()};
    if (canonicalize_generators(d, gens) != IdealTriple::unit()) {
        throw ValidationError("is_mult_congruent_one: element is not coprime to the modulus");
    }
    return contains(n, alpha - FieldElement::integer(m));
}

}  // namespace rayform::qfield
