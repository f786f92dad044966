#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "rayform/forms.hpp"
#include "rayform/qfield.hpp"

/// Extended form class groups Q_N(dK)/~n: forms whose leading coefficient is
/// prime to N, modulo the equivalence induced by the ray class group of n.
namespace rayform::rayclass {

using forms::QuadForm;
using forms::UnimodMatrix;
using qfield::Discriminant;
using qfield::FieldElement;
using qfield::IdealTriple;
using qfield::IntMatrix2;

/// A nontrivial integral ideal n = [a1*tau + a2, N] of O_K together with dK.
class Modulus {
public:
    /// Throws ValidationError for an invalid triple or n = O_K.
    static Modulus make(Discriminant d, IdealTriple n);

    Discriminant const & disc() const { return d_; }
    IdealTriple const & ideal() const { return n_; }
    /// Least positive integer in n.
    Int const & N() const { return n_.c; }
    Int const & a1() const { return n_.a1; }
    Int const & a2() const { return n_.a2; }

private:
    Modulus(Discriminant d, IdealTriple n) : d_(std::move(d)), n_(std::move(n)) {}
    Discriminant d_;
    IdealTriple n_;
};

struct RowVec {
    Int u;
    Int v;
    bool operator==(RowVec const &) const = default;
    bool operator<(RowVec const & o) const { return std::tie(u, v) < std::tie(o.u, o.v); }
};

struct FormClass {
    QuadForm rep;
};

struct ClassGroup {
    Modulus modulus;
    std::vector<FormClass> classes;           // identity class first
    std::vector<std::vector<int>> table;      // empty until filled
    std::vector<Int> invariant_factors;       // d1 | d2 | ...; empty until filled
};

/// Data attached to a class by the explicit Galois action: the Fricke label
/// [1/N, 0] * a_inv * S = [0, a_inv/N] evaluated at eval_matrix(point).
struct GaloisDescriptor {
    Int N;
    Int a_inv;               // a * a_inv = 1 (mod N), 1 <= a_inv < N
    IntMatrix2 eval_matrix;  // [[a1, d_Q/a], [0, N]]
    FieldElement point;      // -conj(omega_Q)
    bool twisted_by_S = true;
};

/// Throws ValidationError unless q is a valid form with gcd(a, N) = 1.
void require_member(QuadForm const & q, Modulus const & m);

/// a_inv * (a2/a1 - (bK - b)/2) mod N, the slope in the bottom-row condition
/// s = 1 + slope * r (mod N) for witnesses of Q = Q2^alpha.
Int witness_slope(QuadForm const & q, Modulus const & m);

Int d_Q(QuadForm const & q, Modulus const & m);
/// [[a1, d_Q], [0, N*a]]: basis of n*[-a*conj(omega_Q), a] over (-a*conj(omega_Q), 1).
IntMatrix2 nm_basis(QuadForm const & q, Modulus const & m);

bool in_gamma_n(UnimodMatrix const & g, Modulus const & m);

/// (mm, nn) with T^nn * g * T^mm in Gamma_n, given g21 = 0 (mod a1) and
/// g22 = 1 + k*g21 (mod N). Throws ValidationError when that fails.
std::pair<Int, Int> t_normalize(UnimodMatrix const & g, Int const & k, Modulus const & m);

/// A witness alpha with q == q2^alpha satisfying the bottom-row congruences,
/// or nullopt when q and q2 lie in different classes.
std::optional<UnimodMatrix> equivalent(QuadForm const & q, QuadForm const & q2, Modulus const & m);

/// Decides q ~n q2 straight from the ray class group definition with ideal
/// arithmetic: principality of [omega_q,1][omega_q2,1]^-1 and a generator
/// congruent to 1 mod* n. Shares no code path with equivalent().
bool equivalent_oracle(QuadForm const & q, QuadForm const & q2, Modulus const & m);

struct Decomposition {
    Int u;
    UnimodMatrix gamma;  // in Gamma_n
    Int v;
};
/// alpha = T^u * gamma * T^v for a witness alpha of equivalent(q, ., m).
Decomposition decompose(UnimodMatrix const & alpha, QuadForm const & q, Modulus const & m);

bool in_VQ(QuadForm const & q, RowVec const & w, Int const & N);
/// Pairs (m, n) with m*tau + n a unit, as tabulated for the three unit groups.
std::vector<std::pair<Int, Int>> u_K(Discriminant const & d);
bool sim_Q(QuadForm const & q, RowVec const & w1, RowVec const & w2, Modulus const & m);
/// Lexicographically least member of each class of V_Q / ~Q, sorted.
std::vector<RowVec> vq_classes(QuadForm const & q, Modulus const & m);
/// g in SL2(Z) whose bottom row is congruent to w modulo N.
UnimodMatrix lift_bottom_row(RowVec const & w, Int const & N);

/// One representative per class; identity class first, the rest sorted by
/// (a, b, c). Cross-checked against the ray class number oracle.
ClassGroup enumerate(Modulus const & m);

QuadForm compose(QuadForm const & q, QuadForm const & q2, Modulus const & m);

/// Index of the class containing q.
int class_index(ClassGroup const & g, QuadForm const & q);

/// Enumerates and fills the composition table and invariant factors; table
/// cells are evaluated with OpenMP.
ClassGroup table(Modulus const & m);
/// Single-threaded reference for table().
ClassGroup table_serial(Modulus const & m);

/// Invariant factors of a finite abelian group given its Cayley table with
/// identity 0. Splits off a cyclic factor of maximal order repeatedly.
std::vector<Int> invariant_factors(std::vector<std::vector<int>> const & table);
/// Latin square, symmetric, identity row and column 0, associative.
bool is_abelian_group_table(std::vector<std::vector<int>> const & table);

GaloisDescriptor descriptor(QuadForm const & q, Modulus const & m);

}  // namespace rayform::rayclass
