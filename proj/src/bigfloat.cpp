#include "rayform/bigfloat.hpp"

#include <algorithm>
#include <memory>

namespace rayform::bigfloat {

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(x_, bits);
    mpfr_set_zero(x_, 1);
}

Real::Real(long v, mpfr_prec_t bits)
{
    mpfr_init2(x_, bits);
    mpfr_set_si(x_, v, MPFR_RNDN);
}

Real::Real(Rational const & v, mpfr_prec_t bits)
{
    mpfr_init2(x_, bits);
    mpfr_t den;
    mpfr_init2(den, bits);
    mpfr_set_str(x_, numerator(v).str().c_str(), 10, MPFR_RNDN);
    mpfr_set_str(den, denominator(v).str().c_str(), 10, MPFR_RNDN);
    mpfr_div(x_, x_, den, MPFR_RNDN);
    mpfr_clear(den);
}

Real::Real(std::string const & text, mpfr_prec_t bits)
{
    mpfr_init2(x_, bits);
    if (mpfr_set_str(x_, text.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(x_);
        throw ValidationError("not a decimal number: '" + text + "'");
    }
}

Real::Real(Real const & o)
{
    mpfr_init2(x_, o.bits());
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real && o) noexcept
{
    // steal the limbs and leave o as a valid minimal-precision zero
    *x_ = *o.x_;
    mpfr_init2(o.x_, MPFR_PREC_MIN);
}

Real & Real::operator=(Real const & o)
{
    if (this != &o) {
        mpfr_set_prec(x_, o.bits());
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

Real & Real::operator=(Real && o) noexcept
{
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Int Real::round() const
{
    if (!is_finite()) throw ConsistencyError("rounding a non-finite value");
    mpfr_t r;
    mpfr_init2(r, std::max<mpfr_prec_t>(bits(), 64));
    mpfr_round(r, x_);
    char * s = nullptr;
    mpfr_asprintf(&s, "%.0Rf", r);
    std::string text(s);
    mpfr_free_str(s);
    mpfr_clear(r);
    return Int(text);
}

std::string Real::str(int digits) const
{
    if (!is_finite()) throw ConsistencyError("formatting a non-finite value");
    if (is_zero()) return "0";
    mpfr_exp_t e = 0;
    std::unique_ptr<char, void (*)(char *)> raw(mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN), mpfr_free_str);
    std::string m(raw.get());
    std::string sign;
    if (m[0] == '-') {
        sign = "-";
        m.erase(0, 1);
    }
    return sign + m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

Real Real::pow10(long e, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_ui_pow_ui(r.x_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.x_, 1, r.x_, MPFR_RNDN);
    return r;
}

namespace {

mpfr_prec_t joint(Real const & a, Real const & b) { return std::max(a.bits(), b.bits()); }

template <class Op>
Real binary(Real const & a, Real const & b, Op op)
{
    Real r(joint(a, b));
    op(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

template <class Op>
Real unary(Real const & a, Op op)
{
    Real r(a.bits());
    op(r.get(), a.get(), MPFR_RNDN);
    return r;
}

}  // namespace

Real operator+(Real const & a, Real const & b) { return binary(a, b, mpfr_add); }
Real operator-(Real const & a, Real const & b) { return binary(a, b, mpfr_sub); }
Real operator*(Real const & a, Real const & b) { return binary(a, b, mpfr_mul); }
Real operator/(Real const & a, Real const & b) { return binary(a, b, mpfr_div); }
Real operator-(Real const & a) { return unary(a, mpfr_neg); }

Real operator*(Real const & a, long k)
{
    Real r(a.bits());
    mpfr_mul_si(r.get(), a.get(), k, MPFR_RNDN);
    return r;
}

bool operator<(Real const & a, Real const & b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(Real const & a, Real const & b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(Real const & a, Real const & b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(Real const & a, Real const & b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

Real abs(Real const & a) { return unary(a, mpfr_abs); }
Real sqrt(Real const & a) { return unary(a, mpfr_sqrt); }
Real exp(Real const & a) { return unary(a, mpfr_exp); }
Real log10(Real const & a) { return unary(a, mpfr_log10); }
Real sin(Real const & a) { return unary(a, mpfr_sin); }
Real cos(Real const & a) { return unary(a, mpfr_cos); }
Real hypot(Real const & a, Real const & b) { return binary(a, b, mpfr_hypot); }

Complex operator+(Complex const & a, Complex const & b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(Complex const & a, Complex const & b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(Complex const & a) { return {-a.re, -a.im}; }

Complex operator*(Complex const & a, Complex const & b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(Complex const & a, Complex const & b)
{
    Real den = b.re * b.re + b.im * b.im;
    if (den.is_zero()) throw ConsistencyError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Complex operator*(Complex const & a, Real const & k) { return {a.re * k, a.im * k}; }
Complex operator*(Complex const & a, long k) { return {a.re * k, a.im * k}; }

Real abs(Complex const & a) { return hypot(a.re, a.im); }

Complex pow(Complex const & a, unsigned n)
{
    Complex r{Real(1, a.bits()), Real(0, a.bits())};
    Complex base = a;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Complex exp_2pi_i(Complex const & z)
{
    Real two_pi = Real::pi(z.bits()) * 2;
    Real mod = exp(-(two_pi * z.im));
    Real arg = two_pi * z.re;
    return {mod * cos(arg), mod * sin(arg)};
}

}  // namespace rayform::bigfloat
