#pragma once

#include <mpfr.h>

#include <string>

#include "rayform/arith.hpp"

/// Owning MPFR wrappers. Every value carries its own precision; nothing
/// reads or writes MPFR's process-wide default precision.
namespace rayform::bigfloat {

class Real {
public:
    explicit Real(mpfr_prec_t bits);
    Real(long v, mpfr_prec_t bits);
    Real(Rational const & v, mpfr_prec_t bits);
    /// Decimal literal.
    Real(std::string const & text, mpfr_prec_t bits);
    Real(Real const & o);
    Real(Real && o) noexcept;
    Real & operator=(Real const & o);
    Real & operator=(Real && o) noexcept;
    ~Real();

    mpfr_prec_t bits() const { return mpfr_get_prec(x_); }
    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

    bool is_finite() const { return mpfr_number_p(x_) != 0; }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    /// Nearest integer, ties away from zero.
    Int round() const;
    /// Scientific notation with `digits` significant digits.
    std::string str(int digits) const;

    static Real pi(mpfr_prec_t bits);
    /// 10^e.
    static Real pow10(long e, mpfr_prec_t bits);

private:
    mpfr_t x_;
};

Real operator+(Real const & a, Real const & b);
Real operator-(Real const & a, Real const & b);
Real operator*(Real const & a, Real const & b);
Real operator/(Real const & a, Real const & b);
Real operator-(Real const & a);
Real operator*(Real const & a, long k);

bool operator<(Real const & a, Real const & b);
bool operator>(Real const & a, Real const & b);
bool operator<=(Real const & a, Real const & b);
bool operator>=(Real const & a, Real const & b);

Real abs(Real const & a);
Real sqrt(Real const & a);
Real exp(Real const & a);
Real log10(Real const & a);
Real sin(Real const & a);
Real cos(Real const & a);
Real hypot(Real const & a, Real const & b);

struct Complex {
    Real re;
    Real im;

    explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t bits() const { return re.bits(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }
};

Complex operator+(Complex const & a, Complex const & b);
Complex operator-(Complex const & a, Complex const & b);
Complex operator*(Complex const & a, Complex const & b);
Complex operator/(Complex const & a, Complex const & b);
Complex operator-(Complex const & a);
Complex operator*(Complex const & a, Real const & k);
Complex operator*(Complex const & a, long k);

Real abs(Complex const & a);
Complex pow(Complex const & a, unsigned n);
/// e^(2 pi i z).
Complex exp_2pi_i(Complex const & z);

}  // namespace rayform::bigfloat
