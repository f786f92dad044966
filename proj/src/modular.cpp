#include "rayform/modular.hpp"

#include <cmath>
#include <mutex>

namespace rayform::modular {

namespace {

constexpr long kMaxTerms = 100000;

Int divisor_power_sum(long n, unsigned k)
{
    Int s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += boost::multiprecision::pow(Int(d), k);
        long e = n / d;
        if (e != d) s += boost::multiprecision::pow(Int(e), k);
    }
    return s;
}

}  // namespace

Precision Precision::make(int digits, int cutoff_exponent)
{
    if (digits < 30) throw ValidationError("precision must be at least 30 digits, got " + std::to_string(digits));
    if (cutoff_exponent > -digits - 10) {
        throw ValidationError("tail cutoff 10^" + std::to_string(cutoff_exponent) + " is too coarse for " +
                              std::to_string(digits) + " digits");
    }
    return Precision(digits, cutoff_exponent);
}

Precision Precision::standard() { return make(80, -100); }
Precision Precision::with_digits(int digits) { return make(digits, -digits - 20); }

mpfr_prec_t Precision::bits() const
{
    return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.321928094887362)) + 64;
}

Real Precision::tail_cutoff() const { return Real::pow10(cutoff_exponent_, bits()); }

std::string to_string(Real const & x, Precision const & p) { return x.str(p.digits()); }

FrickeLabel FrickeLabel::make(int i, Int const & r, Int const & s, Int const & N)
{
    if (i < 1 || i > 3) throw ValidationError("Fricke index must be 1, 2 or 3, got " + std::to_string(i));
    if (N < 1) throw ValidationError("Fricke level must be positive");
    FrickeLabel l{i, floor_mod(r, N), floor_mod(s, N), N};
    if (l.r == 0 && l.s == 0) throw ValidationError("Fricke label " + l.str() + " is integral");
    return l;
}

FrickeLabel FrickeLabel::parse(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ValidationError("Fricke label must look like i:r,s,N");
    Int i = parse_int(text.substr(0, colon));
    if (i < 1 || i > 3) throw ValidationError("Fricke index must be 1, 2 or 3");
    auto v = parse_int_list(text.substr(colon + 1), 3);
    return make(static_cast<int>(i), v[0], v[1], v[2]);
}

std::string FrickeLabel::str() const
{
    return std::to_string(i) + ":" + rayform::to_string(r) + "," + rayform::to_string(s) + "," + rayform::to_string(N);
}

FrickeLabel FrickeLabel::times(UnimodMatrix const & g) const
{
    return make(i, r * g.p + s * g.r, r * g.q + s * g.s, N);
}

Complex mobius(UnimodMatrix const & g, Complex const & z)
{
    mpfr_prec_t b = z.bits();
    Complex num = z * Real(Rational(g.p), b) + Complex(Real(Rational(g.q), b), Real(b));
    Complex den = z * Real(Rational(g.r), b) + Complex(Real(Rational(g.s), b), Real(b));
    return num / den;
}

Complex to_complex(Discriminant const & d, FieldElement const & x, Precision const & p)
{
    Real re = p.real(qfield::real_part(d, x));
    Real im = p.real(x.u) * sqrt(p.real(-d.dK())) / p.real(2);
    return {re, im};
}

Complex parse_complex(std::string_view text, Precision const & p)
{
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ValidationError("complex value must look like re,im");
    return {Real(std::string(text.substr(0, comma)), p.bits()), Real(std::string(text.substr(comma + 1)), p.bits())};
}

FundamentalPoint reduce_to_fundamental(Complex const & tau, Precision const & p)
{
    if (tau.im.sign() <= 0) throw ValidationError("point must lie in the upper half-plane");
    Complex t = tau;
    UnimodMatrix h = UnimodMatrix::identity();  // t == h(tau)
    Real one = p.real(1);
    for (long iter = 0; iter < kMaxTerms; ++iter) {
        Int k = t.re.round();
        if (k != 0) {
            t.re = t.re - p.real(Rational(k));
            h = UnimodMatrix::T(-k) * h;
        }
        if (t.re * t.re + t.im * t.im < one) {
            t = -(Complex(one, p.real(0)) / t);
            h = UnimodMatrix::S() * h;
            continue;
        }
        return {t, h.inverse()};
    }
    throw PrecisionError("fundamental-domain reduction did not terminate");
}

namespace {

Real pi_power(Precision const & p, unsigned k)
{
    Real pi = Real::pi(p.bits());
    Real r = p.real(1);
    for (unsigned e = 0; e < k; ++e) r = r * pi;
    return r;
}

LatticeInvariants invariants_impl(Complex const & tau, Precision const & p)
{
    if (tau.im.sign() <= 0) throw ValidationError("point must lie in the upper half-plane");
    Complex q = bigfloat::exp_2pi_i(tau);
    Real cutoff = p.tail_cutoff();

    Complex e4 = p.complex(1), e6 = p.complex(1), prod = p.complex(1);
    Complex qn = p.complex(1);
    Real one = p.real(1);
    long n = 1;
    for (;; ++n) {
        if (n > kMaxTerms) throw PrecisionError("Eisenstein series did not reach the tail cutoff");
        qn = qn * q;
        Real size = abs(qn);
        // sigma_5(n) bounds every coefficient used at step n
        Real bound = size * p.real(Rational(divisor_power_sum(n, 5))) * 504;
        if (bound < cutoff) break;
        e4 = e4 + qn * p.real(Rational(divisor_power_sum(n, 3) * 240));
        e6 = e6 - qn * p.real(Rational(divisor_power_sum(n, 5) * 504));
        Complex f = Complex(one, p.real(0)) - qn;
        prod = prod * bigfloat::pow(f, 24);
    }

    Real tp12 = pi_power(p, 12) * 4096;  // (2 pi)^12
    LatticeInvariants out{e4 * (pi_power(p, 4) * 4 / p.real(3)), e6 * (pi_power(p, 6) * 8 / p.real(27)),
                          q * prod * tp12};
    if (!out.g2.is_finite() || !out.g3.is_finite() || !out.delta.is_finite()) {
        throw PrecisionError("lattice invariants overflowed");
    }
    return out;
}

Complex j_impl(Complex const & tau, Precision const & p)
{
    auto fp = reduce_to_fundamental(tau, p);
    auto inv = invariants_impl(fp.tau0, p);
    return bigfloat::pow(inv.g2, 3) * 1728L / inv.delta;
}

// Closest lattice translate of z in [tau, 1]: z - X*tau - Y with |x|, |y| <= 1/2.
Complex reduce_mod_lattice(Complex z, Complex const & tau, Precision const & p)
{
    Int X = (z.im / tau.im).round();
    if (X != 0) z = z - tau * p.real(Rational(X));
    Int Y = z.re.round();
    if (Y != 0) z.re = z.re - p.real(Rational(Y));
    return z;
}

Complex wp_impl(Complex const & z0, Complex const & tau, Precision const & p)
{
    Complex z = reduce_mod_lattice(z0, tau, p);
    Real pole_tol = Real::pow10(-(p.digits() / 3), p.bits());
    if (abs(z) < pole_tol) throw PoleError("point is a lattice point: the p-function has a pole there");

    Complex one = p.complex(1);
    Complex q = bigfloat::exp_2pi_i(tau);
    Complex w = bigfloat::exp_2pi_i(z);
    Complex winv = one / w;
    Real wmax = abs(w);
    if (abs(winv) > wmax) wmax = abs(winv);
    Real cutoff = p.tail_cutoff();

    auto term = [&](Complex const & x) {
        Complex d = one - x;
        return x / (d * d);
    };
    Complex s = Complex(p.real(1) / p.real(12), p.real(0)) + term(w);
    Complex qn = one;
    for (long n = 1;; ++n) {
        if (n > kMaxTerms) throw PrecisionError("p-function series did not reach the tail cutoff");
        qn = qn * q;
        Real size = abs(qn);
        if (size * wmax * 4 < cutoff) break;
        s = s + term(qn * w) + term(qn * winv) - term(qn) * 2L;
    }
    // (2 pi i)^2 = -4 pi^2
    Real scale = -(pi_power(p, 2) * 4);
    Complex out = s * scale;
    if (!out.is_finite()) throw PoleError("p-function value is not finite");
    return out;
}

Complex combine(int i, LatticeInvariants const & inv, Complex const & wpv)
{
    switch (i) {
    case 1: return inv.g2 * inv.g3 / inv.delta * wpv;
    case 2: return inv.g2 * inv.g2 / inv.delta * wpv * wpv;
    case 3: return inv.g3 / inv.delta * bigfloat::pow(wpv, 3);
    }
    throw ValidationError("Fricke index must be 1, 2 or 3");
}

std::once_flag self_test_once;

void ensure_self_test() { std::call_once(self_test_once, self_test); }

}  // namespace

void self_test()
{
    Precision p = Precision::standard();
    Real tol = Real::pow10(-(p.digits() - 10), p.bits());
    Complex i_point{p.real(0), p.real(1)};
    Complex rho{-(p.real(1) / p.real(2)), sqrt(p.real(3)) / p.real(2)};
    if (abs(j_impl(i_point, p) - p.complex(1728)) > tol) throw ConsistencyError("normalisation self-test: j(i) != 1728");
    if (abs(j_impl(rho, p)) > tol) throw ConsistencyError("normalisation self-test: j(rho) != 0");
}

LatticeInvariants lattice_invariants(Complex const & tau, Precision const & p)
{
    ensure_self_test();
    return invariants_impl(tau, p);
}

Complex eisenstein_j(Complex const & tau, Precision const & p)
{
    ensure_self_test();
    return j_impl(tau, p);
}

Complex wp(Complex const & z, Complex const & tau, Precision const & p)
{
    ensure_self_test();
    if (tau.im.sign() <= 0) throw ValidationError("lattice parameter must lie in the upper half-plane");
    return wp_impl(z, tau, p);
}

Complex fricke_unreduced(FrickeLabel const & l, Complex const & tau, Precision const & p)
{
    ensure_self_test();
    auto inv = invariants_impl(tau, p);
    Real n = p.real(Rational(l.N));
    Complex z = tau * (p.real(Rational(l.r)) / n) + Complex(p.real(Rational(l.s)) / n, p.real(0));
    return combine(l.i, inv, wp_impl(z, tau, p));
}

Complex fricke(FrickeLabel const & label, Complex const & tau, Precision const & p)
{
    auto fp = reduce_to_fundamental(tau, p);
    return fricke_unreduced(label.times(fp.g), fp.tau0, p);
}

int natural_index(Discriminant const & d) { return d.unit_count() / 2; }

Complex weber(Discriminant const & d, Complex const & z, FieldElement const & e1, FieldElement const & e2,
              Precision const & p)
{
    ensure_self_test();
    if (e1.is_zero() || e2.is_zero()) throw ValidationError("weber: degenerate lattice basis");
    FieldElement t = qfield::div(d, e1, e2);
    FieldElement w1 = e1, w2 = e2;
    if (qfield::imag_sign(t) == 0) throw ValidationError("weber: basis elements are linearly dependent");
    if (qfield::imag_sign(t) < 0) {
        std::swap(w1, w2);
        t = qfield::div(d, w1, w2);
    }
    // h(z; [w1, w2]) = h(z/w2; [t, 1]) and [g(t0), 1] = J^-1 [t0, 1]
    Complex zs = z / to_complex(d, w2, p);
    auto fp = reduce_to_fundamental(to_complex(d, t, p), p);
    Complex J = fp.tau0 * p.real(Rational(fp.g.r)) + Complex(p.real(Rational(fp.g.s)), p.real(0));
    auto inv = invariants_impl(fp.tau0, p);
    return combine(natural_index(d), inv, wp_impl(zs * J, fp.tau0, p));
}

Complex eval_descriptor(Discriminant const & d, rayclass::GaloisDescriptor const & desc, int i, Precision const & p)
{
    FrickeLabel label = FrickeLabel::make(i, 0, desc.a_inv, desc.N);
    FieldElement point = qfield::mobius(d, qfield::to_rational(desc.eval_matrix), desc.point);
    return fricke(label, to_complex(d, point, p), p);
}

Complex fricke_invariant(rayclass::Modulus const & m, forms::QuadForm const & q, int i, Precision const & p)
{
    rayclass::require_member(q, m);
    auto const & d = m.disc();
    Int const & N = m.N();
    long long phi = euler_phi(to_ll(N));

    // c = a^phi [omega_Q, 1] is integral, and n c^-1 = a^-phi * n * [-a conj(omega_Q), a]
    FieldElement gens[] = {{1, Rational((d.bK() + q.b) / 2)}, FieldElement::integer(q.a)};
    auto conj_part = qfield::canonicalize_generators(d, gens);
    auto nm = qfield::ideal_product(d, m.ideal(), conj_part);

    // omega1 = a^-phi (b1 tau + b2), omega2 = a^-phi C; N = 0*omega1 + s*omega2
    Int scaled = N * boost::multiprecision::pow(q.a, static_cast<unsigned>(phi));
    if (scaled % nm.c != 0) throw ConsistencyError("N is not an integral multiple of the second basis vector");
    Int s = scaled / nm.c;
    FieldElement omega{Rational(nm.a1, nm.c), Rational(nm.a2, nm.c)};
    return fricke(FrickeLabel::make(i, 0, s, N), to_complex(d, omega, p), p);
}

}  // namespace rayform::modular
