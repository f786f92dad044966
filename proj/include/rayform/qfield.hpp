#pragma once

#include <tuple>
#include <span>
#include <string>
#include <vector>

#include "rayform/arith.hpp"

/// Exact arithmetic in an imaginary quadratic field K = Q(sqrt(dK)).
///
/// Elements are written u*tau + v over the integral basis {tau, 1} of O_K,
/// where tau = (-bK + sqrt(dK))/2 satisfies tau^2 + bK*tau + cK = 0.
/// Integral ideals travel as canonical triples (a1, a2, c) describing the
/// Z-basis {a1*tau + a2, c}; raw lattices appear only as intermediates.
namespace rayform::qfield {

class Discriminant {
public:
    /// Validates dK < 0, dK = 0,1 mod 4 and fundamental.
    static Discriminant make(Int const & d);

    Int const & dK() const { return d_; }
    /// Coefficients of the principal form x^2 + bK*x*y + cK*y^2.
    Int const & bK() const { return b_; }
    Int const & cK() const { return c_; }
    /// |O_K^*|: 4 for dK = -4, 6 for dK = -3, else 2.
    int unit_count() const;

    bool operator==(Discriminant const &) const = default;

private:
    Discriminant(Int d, Int b, Int c) : d_(std::move(d)), b_(std::move(b)), c_(std::move(c)) {}
    Int d_, b_, c_;
};

Discriminant make_discriminant(Int const & d);

/// u*tau + v.
struct FieldElement {
    Rational u;
    Rational v;

    static FieldElement tau() { return {1, 0}; }
    static FieldElement integer(Int const & n) { return {0, Rational(n)}; }

    bool is_zero() const { return u == 0 && v == 0; }
    bool is_integral() const { return is_integer(u) && is_integer(v); }

    bool operator==(FieldElement const &) const = default;
};

FieldElement operator+(FieldElement const & x, FieldElement const & y);
FieldElement operator-(FieldElement const & x, FieldElement const & y);
FieldElement operator-(FieldElement const & x);
FieldElement scale(Rational const & k, FieldElement const & x);

FieldElement mul(Discriminant const & d, FieldElement const & x, FieldElement const & y);
/// Throws ValidationError when y == 0.
FieldElement div(Discriminant const & d, FieldElement const & x, FieldElement const & y);
FieldElement conj(Discriminant const & d, FieldElement const & x);
Rational norm(Discriminant const & d, FieldElement const & x);
/// Sign of the imaginary part (the coefficient u carries it).
int imag_sign(FieldElement const & x);
/// Real part v - u*bK/2.
Rational real_part(Discriminant const & d, FieldElement const & x);

template <class T>
struct Matrix2 {
    T a11, a12, a21, a22;

    static Matrix2 identity() { return {T(1), T(0), T(0), T(1)}; }
    T det() const { return a11 * a22 - a12 * a21; }
    Matrix2 operator*(Matrix2 const & o) const
    {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    bool operator==(Matrix2 const &) const = default;
};

using IntMatrix2 = Matrix2<Int>;
using RatMatrix2 = Matrix2<Rational>;

RatMatrix2 to_rational(IntMatrix2 const & m);

/// (m11*z + m12) / (m21*z + m22) for det(m) > 0 and Im(z) > 0.
FieldElement mobius(Discriminant const & d, RatMatrix2 const & m, FieldElement const & z);

/// Z-lattice spanned by two elements; row i holds the (tau, 1)-coordinates of
/// basis vector i. Oriented when det > 0, i.e. row1/row2 lies in the upper
/// half-plane.
struct LatticeBasis {
    RatMatrix2 m;

    static LatticeBasis from_elements(FieldElement const & e1, FieldElement const & e2)
    {
        return {{e1.u, e1.v, e2.u, e2.v}};
    }
    FieldElement first() const { return {m.a11, m.a12}; }
    FieldElement second() const { return {m.a21, m.a22}; }
};

struct IdealTriple {
    Int a1;
    Int a2;
    Int c;

    static IdealTriple unit() { return {1, 0, 1}; }
    /// Text form "a1,a2,c".
    static IdealTriple parse(std::string_view text);
    std::string str() const;
    FieldElement first() const { return {Rational(a1), Rational(a2)}; }
    FieldElement second() const { return FieldElement::integer(c); }
    Int norm() const { return a1 * c; }

    bool operator==(IdealTriple const &) const = default;
    bool operator<(IdealTriple const & o) const { return std::tie(a1, a2, c) < std::tie(o.a1, o.a2, o.c); }
};

/// Checks the canonical-basis conditions and that the lattice is an ideal.
bool is_valid_triple(Discriminant const & d, IdealTriple const & t);
/// Throws ValidationError when !is_valid_triple(d, t).
void require_valid_triple(Discriminant const & d, IdealTriple const & t);

LatticeBasis to_lattice(IdealTriple const & t);

/// Canonical triple of the Z-module spanned by `gens` (integral elements).
/// Throws ValidationError when the module has rank < 2, a generator is not
/// integral, or the module is not closed under multiplication by tau.
IdealTriple canonicalize_generators(Discriminant const & d, std::span<FieldElement const> gens);
IdealTriple canonicalize_ideal(Discriminant const & d, LatticeBasis const & lattice);

IdealTriple ideal_product(Discriminant const & d, IdealTriple const & s, IdealTriple const & t);
IdealTriple ideal_sum(Discriminant const & d, IdealTriple const & s, IdealTriple const & t);
IdealTriple ideal_conj(Discriminant const & d, IdealTriple const & t);

/// Absolute value of the coordinate determinant.
Rational ideal_norm(LatticeBasis const & lattice);
bool is_coprime(Discriminant const & d, IdealTriple const & s, IdealTriple const & t);

/// Membership of an arbitrary field element in the ideal t.
bool contains(IdealTriple const & t, FieldElement const & x);
/// Canonical residue x' = x (mod t) with 0 <= x'.u < a1 and 0 <= x'.v < c.
FieldElement reduce_mod(IdealTriple const & t, FieldElement const & x);

/// Every lambda in the lattice with |N(lambda)| equal to the lattice norm,
/// sorted by coordinates. Nonempty exactly when the fractional ideal spanned
/// by the lattice is principal; the entries are then all of its generators.
std::vector<FieldElement> minimal_norm_elements(Discriminant const & d, LatticeBasis const & lattice);

/// O_K^*, obtained as the norm-one elements of O_K.
std::vector<FieldElement> unit_group(Discriminant const & d);

/// Multiplicative congruence x = 1 (mod* n). Requires x != 0, the least
/// integer denominator m of x coprime to c(n), and x*O_K coprime to n;
/// violations throw ValidationError.
bool is_mult_congruent_one(Discriminant const & d, FieldElement const & x, IdealTriple const & n);

/// h_K * |(O_K/n)^*| / |image of O_K^* in (O_K/n)^*|, built from residue
/// enumeration and reduced-form counting. Throws ValidationError for n = O_K.
Int ray_class_number_oracle(Discriminant const & d, IdealTriple const & n);

}  // namespace rayform::qfield
