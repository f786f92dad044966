#pragma once

#include <string>
#include <string_view>

#include "rayform/bigfloat.hpp"
#include "rayform/forms.hpp"
#include "rayform/qfield.hpp"
#include "rayform/rayclass.hpp"

/// High-precision evaluation of j, g2, g3, Delta, the Weierstrass p-function,
/// Fricke functions and Weber functions through q-expansions.
namespace rayform::modular {

using bigfloat::Complex;
using bigfloat::Real;
using forms::UnimodMatrix;
using qfield::Discriminant;
using qfield::FieldElement;

/// The evaluation point sits on (or numerically on) a pole.
struct PoleError : ValidationError {
    using ValidationError::ValidationError;
};

/// A q-series failed to reach the tail cutoff within its term budget.
struct PrecisionError : ConsistencyError {
    using ConsistencyError::ConsistencyError;
};

class Precision {
public:
    /// digits >= 30 and cutoff_exponent <= -digits - 10; tail cutoff is
    /// 10^cutoff_exponent.
    static Precision make(int digits, int cutoff_exponent);
    /// 80 digits, cutoff 10^-100.
    static Precision standard();
    /// `digits` with cutoff 10^-(digits + 20).
    static Precision with_digits(int digits);

    int digits() const { return digits_; }
    int cutoff_exponent() const { return cutoff_exponent_; }
    /// Working precision in bits, with guard bits on top of `digits`.
    mpfr_prec_t bits() const;
    Real tail_cutoff() const;
    Real real(long v) const { return Real(v, bits()); }
    Real real(Rational const & v) const { return Real(v, bits()); }
    Complex complex(long re, long im = 0) const { return {real(re), real(im)}; }

private:
    Precision(int d, int e) : digits_(d), cutoff_exponent_(e) {}
    int digits_;
    int cutoff_exponent_;
};

/// Label of the Fricke function f^(i)_v with v = [r/N, s/N].
struct FrickeLabel {
    int i;
    Int r;
    Int s;
    Int N;

    /// Reduces (r, s) into [0, N)^2; rejects i outside {1,2,3}, N < 1 and
    /// (r, s) = (0, 0) mod N.
    static FrickeLabel make(int i, Int const & r, Int const & s, Int const & N);
    /// Text form "i:r,s,N".
    static FrickeLabel parse(std::string_view text);
    std::string str() const;

    /// v * g, reduced.
    FrickeLabel times(UnimodMatrix const & g) const;
    FrickeLabel with_i(int j) const { return make(j, r, s, N); }
};

struct FundamentalPoint {
    Complex tau0;
    UnimodMatrix g;  // tau = g(tau0)
};
/// |Re tau0| <= 1/2 and |tau0| >= 1.
FundamentalPoint reduce_to_fundamental(Complex const & tau, Precision const & p);

Complex mobius(UnimodMatrix const & g, Complex const & z);
Complex to_complex(Discriminant const & d, FieldElement const & x, Precision const & p);
/// Text "re,im" with decimal parts.
Complex parse_complex(std::string_view text, Precision const & p);

/// g2, g3 and Delta of [tau, 1], evaluated at tau as given.
struct LatticeInvariants {
    Complex g2;
    Complex g3;
    Complex delta;
};
LatticeInvariants lattice_invariants(Complex const & tau, Precision const & p);

Complex eisenstein_j(Complex const & tau, Precision const & p);
Complex wp(Complex const & z, Complex const & tau, Precision const & p);
/// Reduces tau to the fundamental domain first and moves the label along.
Complex fricke(FrickeLabel const & label, Complex const & tau, Precision const & p);
/// Series evaluated at tau as given; slow when Im(tau) is small.
Complex fricke_unreduced(FrickeLabel const & label, Complex const & tau, Precision const & p);
/// h(z; [e1, e2]) for the field of discriminant d.
Complex weber(Discriminant const & d, Complex const & z, FieldElement const & e1, FieldElement const & e2,
              Precision const & p);

/// f^(i)_[0, a_inv/N] at eval_matrix(point).
Complex eval_descriptor(Discriminant const & d, rayclass::GaloisDescriptor const & desc, int i, Precision const & p);

/// The Fricke invariant of the class of Q computed from its definition: the
/// integral ideal a^phi(N) [omega_Q, 1], a basis of n c^-1 and the coordinates
/// of N in it.
Complex fricke_invariant(rayclass::Modulus const & m, forms::QuadForm const & q, int i, Precision const & p);

/// i = |O_K^*| / 2.
int natural_index(Discriminant const & d);

/// j(i) = 1728 and j(rho) = 0 to 10^-(digits - 10); throws ConsistencyError.
/// Runs once per process at the standard precision before the first
/// evaluation.
void self_test();

/// Serialises to "d.ddd...e-x" with `digits` significant digits.
std::string to_string(Real const & x, Precision const & p);

}  // namespace rayform::modular
