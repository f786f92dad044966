#include <gtest/gtest.h>

#include <complex>

#include "rayform/checks.hpp"
#include "rayform/modular.hpp"
#include "support.hpp"

using namespace rayform;
using namespace rayform::modular;
using bigfloat::Complex;
using bigfloat::Real;
using checks::relative_gap;

namespace {

Precision const P = Precision::standard();

Complex c(double re, double im) { return {Real(std::to_string(re), P.bits()), Real(std::to_string(im), P.bits())}; }

bool close(Complex const & x, Complex const & y, int exp10) { return relative_gap(x, y) < Real::pow10(-exp10, P.bits()); }

std::complex<double> to_std(Complex const & z) { return {z.re.to_double(), z.im.to_double()}; }

// Symmetric truncated lattice sum; the error decays like 1/R^2.
std::complex<double> wp_direct(std::complex<double> z, std::complex<double> tau, int R)
{
    std::complex<double> s = 1.0 / (z * z);
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            auto w = double(m) * tau + double(n);
            s += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
        }
    return s;
}

std::complex<double> g2_direct(std::complex<double> tau, int R)
{
    std::complex<double> s = 0;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            auto w = double(m) * tau + double(n);
            s += 1.0 / (w * w * w * w);
        }
    return 60.0 * s;
}

}  // namespace

TEST(Modular, PrecisionValidation)
{
    EXPECT_THROW(Precision::make(10, -30), ValidationError);
    EXPECT_THROW(Precision::make(80, -50), ValidationError);
    EXPECT_EQ(Precision::standard().digits(), 80);
    EXPECT_EQ(Precision::standard().cutoff_exponent(), -100);
}

TEST(Modular, FrickeLabel)
{
    auto l = FrickeLabel::parse("1:7,-1,6");
    EXPECT_EQ(l.r, 1);
    EXPECT_EQ(l.s, 5);
    EXPECT_EQ(l.str(), "1:1,5,6");
    EXPECT_THROW(FrickeLabel::parse("1:6,12,6"), ValidationError);
    EXPECT_THROW(FrickeLabel::parse("4:1,0,6"), ValidationError);
    // [r, s] * g
    auto m = FrickeLabel::make(1, 1, 0, 6).times({1, 2, 3, 7});
    EXPECT_EQ(m.r, 1);
    EXPECT_EQ(m.s, 2);
}

TEST(Modular, ReduceToFundamental)
{
    auto fp = reduce_to_fundamental(c(0, 1), P);
    EXPECT_TRUE(close(fp.tau0, c(0, 1), 75));
    auto tau = c(0.0123, 0.1);
    auto r = reduce_to_fundamental(tau, P);
    EXPECT_GE(r.tau0.im, sqrt(P.real(3)) / P.real(2) - Real::pow10(-70, P.bits()));
    EXPECT_LE(abs(r.tau0.re), P.real(1) / P.real(2) + Real::pow10(-70, P.bits()));
    EXPECT_TRUE(close(mobius(r.g, r.tau0), tau, 75));
}

TEST(Modular, JSpecialValues)
{
    EXPECT_TRUE(close(eisenstein_j(c(0, 1), P), P.complex(1728), 75));
    Complex rho{-(P.real(1) / P.real(2)), sqrt(P.real(3)) / P.real(2)};
    EXPECT_LT(abs(eisenstein_j(rho, P)), Real::pow10(-70, P.bits()));
    // j(sqrt(-2)) = 8000
    Complex s2{P.real(0), sqrt(P.real(2))};
    EXPECT_TRUE(close(eisenstein_j(s2, P), P.complex(8000), 75));
}

TEST(Modular, JIsInvariant)
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        auto tau = c(0.1 * (t % 7) - 0.3, 0.9 + 0.05 * t);
        auto g = support::random_sl2(rng, 3);
        EXPECT_TRUE(close(eisenstein_j(mobius(g, tau), P), eisenstein_j(tau, P), 60));
    }
}

TEST(Modular, WpIsEvenAndPeriodic)
{
    auto tau = c(0.21, 1.3);
    for (auto z : {c(0.17, 0.05), c(-0.3, 0.41), c(0.45, -0.2)}) {
        auto w = wp(z, tau, P);
        EXPECT_TRUE(close(wp(-z, tau, P), w, 70));
        EXPECT_TRUE(close(wp(z + P.complex(1), tau, P), w, 70));
        EXPECT_TRUE(close(wp(z + tau, tau, P), w, 70));
    }
}

TEST(Modular, WpLaurentLimit)
{
    auto tau = c(0.0, 1.0);
    Real prev = P.real(1);
    for (int k = 2; k <= 8; k += 2) {
        Complex z{Real::pow10(-k, P.bits()), Real::pow10(-k, P.bits()) * P.real(1) / P.real(3)};
        auto v = z * z * wp(z, tau, P);
        Real err = abs(v - P.complex(1));
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, Real::pow10(-20, P.bits()));
}

TEST(Modular, WpMatchesLatticeSum)
{
    for (auto [z, tau] : {std::pair{c(0.23, 0.11), c(0.1, 1.1)}, std::pair{c(0.4, 0.3), c(-0.45, 0.95)}}) {
        auto direct = wp_direct(to_std(z), to_std(tau), 50);
        auto series = to_std(wp(z, tau, P));
        EXPECT_LT(std::abs(direct - series) / std::abs(series), 2e-3);
        auto inv = lattice_invariants(tau, P);
        auto g2 = g2_direct(to_std(tau), 60);
        EXPECT_LT(std::abs(g2 - to_std(inv.g2)) / std::abs(g2), 1e-3);
        // j = 1728 g2^3 / delta
        auto j = to_std(eisenstein_j(tau, P));
        auto j2 = 1728.0 * to_std(pow(inv.g2, 3) / inv.delta);
        EXPECT_LT(std::abs(j - j2) / std::abs(j), 1e-12);
    }
}

TEST(Modular, FrickeBasicSymmetries)
{
    auto tau = c(0.13, 1.07);
    for (int i = 1; i <= 3; ++i) {
        auto f = fricke(FrickeLabel::make(i, 1, 2, 5), tau, P);
        EXPECT_TRUE(close(fricke(FrickeLabel::make(i, -1, -2, 5), tau, P), f, 70));
        EXPECT_TRUE(close(fricke(FrickeLabel::make(i, 6, 12, 5), tau, P), f, 70));
        // [r, s] * T
        EXPECT_TRUE(close(fricke(FrickeLabel::make(i, 1, 3, 5), tau, P),
                          fricke_unreduced(FrickeLabel::make(i, 1, 2, 5), tau + P.complex(1), P), 70));
    }
}

TEST(Modular, TransformationLaw)
{
    std::mt19937_64 rng(23);
    auto tau = c(-0.2, 1.2);
    for (int t = 0; t < 10; ++t) {
        auto g = support::random_sl2(rng, 2);
        auto l = FrickeLabel::make(1 + t % 3, 1 + t % 4, 2, 7);
        EXPECT_TRUE(close(fricke(l, mobius(g, tau), P), fricke_unreduced(l.times(g), tau, P), 60));
    }
}

TEST(Modular, WeberScaleInvariance)
{
    auto d = qfield::Discriminant::make(-23);
    qfield::FieldElement e1{2, 1}, e2 = qfield::FieldElement::integer(3);
    Complex z = to_complex(d, qfield::FieldElement{Rational(1, 5), Rational(2, 7)}, P);
    auto h = weber(d, z, e1, e2, P);
    for (auto nu : {qfield::FieldElement{1, 1}, qfield::FieldElement{Rational(1, 2), -3}, qfield::FieldElement{0, 5}}) {
        auto zn = z * to_complex(d, nu, P);
        EXPECT_TRUE(close(weber(d, zn, qfield::mul(d, nu, e1), qfield::mul(d, nu, e2), P), h, 60));
    }
    // swapping the basis order changes nothing
    EXPECT_TRUE(close(weber(d, z, e2, e1, P), h, 60));
}

TEST(Modular, DigitsDoublingIsStable)
{
    auto m = rayclass::Modulus::make(qfield::Discriminant::make(-20), {2, 4, 6});
    auto p40 = Precision::with_digits(40);
    auto p80 = Precision::with_digits(80);
    auto desc = rayclass::descriptor({7, -6, 2}, m);
    auto a = eval_descriptor(m.disc(), desc, 1, p40);
    auto b = eval_descriptor(m.disc(), desc, 1, p80);
    EXPECT_LT(relative_gap(Complex{Real(a.re.str(45), p80.bits()), Real(a.im.str(45), p80.bits())}, b),
              Real::pow10(-35, p80.bits()));
}

TEST(Modular, DescriptorClassInvariance)
{
    auto g = rayclass::table(rayclass::Modulus::make(qfield::Discriminant::make(-20), {2, 4, 6}));
    checks::Rng rng(29);
    auto r = checks::descriptor_class_invariance(g, P, 40, rng, 3);
    EXPECT_TRUE(r.pass) << r.measured << " " << r.detail;
    auto two = checks::descriptor_two_routes(g, P, 40);
    EXPECT_TRUE(two.pass) << two.measured << " " << two.detail;
}
