#pragma once

#include <tuple>
#include <string>
#include <vector>

#include "rayform/arith.hpp"
#include "rayform/qfield.hpp"

/// Positive definite binary quadratic forms ax^2 + bxy + cy^2 of fundamental
/// discriminant, with the right action Q^g(x, y) = Q(g * (x, y)^T).
namespace rayform::forms {

using qfield::Discriminant;
using qfield::FieldElement;

struct QuadForm {
    Int a;
    Int b;
    Int c;

    /// Text form "a,b,c".
    static QuadForm parse(std::string_view text);
    std::string str() const;

    Int discriminant() const { return b * b - 4 * a * c; }
    Int eval(Int const & x, Int const & y) const { return a * x * x + b * x * y + c * y * y; }

    bool operator==(QuadForm const &) const = default;
    bool operator<(QuadForm const & o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
};

/// Positive definite, primitive and of discriminant dK.
bool is_valid_form(Discriminant const & d, QuadForm const & q);
void require_valid_form(Discriminant const & d, QuadForm const & q);

QuadForm principal_form(Discriminant const & d);

/// Integer matrix [[p, q], [r, s]] with ps - qr = 1.
struct UnimodMatrix {
    Int p;
    Int q;
    Int r;
    Int s;

    static UnimodMatrix identity() { return {1, 0, 0, 1}; }
    static UnimodMatrix S() { return {0, -1, 1, 0}; }
    static UnimodMatrix T(Int const & k = 1) { return {1, k, 0, 1}; }
    /// Throws ValidationError when the determinant is not 1.
    static UnimodMatrix checked(Int p, Int q, Int r, Int s);

    Int det() const { return p * s - q * r; }
    UnimodMatrix inverse() const { return {s, -q, -r, p}; }
    UnimodMatrix operator-() const { return {-p, -q, -r, -s}; }
    UnimodMatrix operator*(UnimodMatrix const & o) const
    {
        return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
    }
    qfield::IntMatrix2 matrix() const { return {p, q, r, s}; }

    bool operator==(UnimodMatrix const &) const = default;
    bool operator<(UnimodMatrix const & o) const { return std::tie(p, q, r, s) < std::tie(o.p, o.q, o.r, o.s); }
};

/// Q^g.
QuadForm act(QuadForm const & q, UnimodMatrix const & g);

/// The root (-b + sqrt(dK)) / (2a) of Q(x, 1) in the upper half-plane.
FieldElement omega(Discriminant const & d, QuadForm const & q);

bool is_reduced(QuadForm const & q);

struct Reduction {
    QuadForm form;        // the reduced form R
    UnimodMatrix witness; // Q == R^witness
};
Reduction reduce(QuadForm const & q);

/// All reduced forms of discriminant dK sorted by (a, b, c); the size is h(dK).
std::vector<QuadForm> reduced_forms(Discriminant const & d);

/// The proper automorphism group of Q, sorted.
std::vector<UnimodMatrix> automorphs(Discriminant const & d, QuadForm const & q);
/// Conjugates of the regular representation of each unit by the basis change
/// from [tau, 1] to [a*omega_Q, a].
std::vector<UnimodMatrix> automorphs_by_units(Discriminant const & d, QuadForm const & q);
/// Search over matrices with entries bounded by 2 at the reduced form,
/// conjugated back to Q.
std::vector<UnimodMatrix> automorphs_by_search(QuadForm const & q);

struct Normalized {
    QuadForm form;  // q^g
    UnimodMatrix g;
};
/// Finds g with gcd(leading coefficient of q^g, modulus) = 1. The first
/// column of g is the first primitive vector hit, checking (1, 0) and then
/// growing max-norm shells in (y, x) row-major order.
Normalized coprime_normalize(QuadForm const & q, Int const & modulus);

}  // namespace rayform::forms
