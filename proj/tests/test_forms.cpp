#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace rayform;
using namespace rayform::forms;
using rayform::support::bounded_forms;
using rayform::support::disc;
using rayform::support::form;

namespace {

// Every g in SL2(Z) with entries bounded by b and q^g == q.
std::set<UnimodMatrix> automorphs_brute(QuadForm const & q, long b)
{
    std::set<UnimodMatrix> out;
    for (long p = -b; p <= b; ++p)
        for (long r = -b; r <= b; ++r)
            for (long x = -b; x <= b; ++x)
                for (long s = -b; s <= b; ++s) {
                    if (p * s - x * r != 1) continue;
                    UnimodMatrix g{p, x, r, s};
                    if (act(q, g) == q) out.insert(g);
                }
    return out;
}

}  // namespace

TEST(Forms, ActionExamples)
{
    EXPECT_EQ(act(form(2, 2, 3), {1, -1, 1, 0}), form(7, -6, 2));
    EXPECT_EQ(act(form(2, -1, 3), {2, -1, 3, -1}), form(29, -21, 4));
    EXPECT_EQ(act(form(2, 1, 3), {2, -1, 3, -1}), form(41, -31, 6));
    EXPECT_EQ(act(form(7, -6, 2), UnimodMatrix::identity()), form(7, -6, 2));
}

TEST(Forms, ActionIsRightAction)
{
    std::mt19937_64 rng(11);
    auto d = disc(-23);
    for (int t = 0; t < 100; ++t) {
        auto g = support::random_sl2(rng, 3);
        auto h = support::random_sl2(rng, 3);
        auto q = act(form(2, -1, 3), support::random_sl2(rng, 2));
        EXPECT_EQ(act(act(q, g), h), act(q, g * h));
        EXPECT_EQ(act(q, g).discriminant(), -23);
        EXPECT_TRUE(is_valid_form(d, act(q, g)));
    }
}

TEST(Forms, ParseAndValidate)
{
    EXPECT_EQ(QuadForm::parse("7,-6,2"), form(7, -6, 2));
    EXPECT_EQ(form(7, -6, 2).str(), "7,-6,2");
    EXPECT_THROW(QuadForm::parse("7,-6"), ValidationError);
    EXPECT_THROW(require_valid_form(disc(-20), form(2, 2, 2)), ValidationError);
    EXPECT_THROW(require_valid_form(disc(-20), form(-1, 0, -5)), ValidationError);
    EXPECT_FALSE(is_valid_form(disc(-20), form(2, 0, 5)));
}

TEST(Forms, Omega)
{
    auto d = disc(-20);
    EXPECT_EQ(omega(d, principal_form(d)), qfield::FieldElement::tau());
    EXPECT_EQ(omega(d, form(7, -6, 2)), (qfield::FieldElement{Rational(1, 7), Rational(3, 7)}));
    for (long dk : {-3L, -4L, -20L, -23L}) {
        auto dd = disc(dk);
        for (auto const & q : bounded_forms(dd, 30)) {
            auto w = omega(dd, q);
            EXPECT_TRUE(qfield::scale(Rational(q.a), w).is_integral());
            EXPECT_EQ(qfield::imag_sign(w), 1);
            // omega is a root of q(x, 1)
            auto w2 = qfield::mul(dd, w, w);
            auto z = qfield::scale(Rational(q.a), w2) + qfield::scale(Rational(q.b), w) + qfield::FieldElement::integer(q.c);
            EXPECT_TRUE(z.is_zero()) << q.str();
        }
    }
}

TEST(Forms, ReducedForms)
{
    EXPECT_EQ(reduced_forms(disc(-20)), (std::vector<QuadForm>{form(1, 0, 5), form(2, 2, 3)}));
    EXPECT_EQ(reduced_forms(disc(-23)), (std::vector<QuadForm>{form(1, 1, 6), form(2, -1, 3), form(2, 1, 3)}));
    EXPECT_EQ(reduced_forms(disc(-4)), (std::vector<QuadForm>{form(1, 0, 1)}));
    EXPECT_EQ(reduced_forms(disc(-3)).size(), 1u);
}

TEST(Forms, Reduce)
{
    auto r = reduce(form(7, -6, 2));
    EXPECT_EQ(r.form, form(2, 2, 3));
    EXPECT_EQ(act(r.form, r.witness), form(7, -6, 2));
    auto r3 = reduce(form(83, -118, 42));
    EXPECT_EQ(r3.form, form(2, 2, 3));
    EXPECT_EQ(act(r3.form, r3.witness), form(83, -118, 42));
    auto r0 = reduce(form(2, 1, 3));
    EXPECT_EQ(r0.form, form(2, 1, 3));
    EXPECT_EQ(act(r0.form, r0.witness), form(2, 1, 3));
}

TEST(Forms, ReductionAgreesWithBoundedSearch)
{
    // forms joined by a small matrix reduce to the same form
    auto d = disc(-23);
    auto fs = bounded_forms(d, 12);
    for (auto const & q : fs) {
        auto rq = reduce(q);
        EXPECT_TRUE(is_reduced(rq.form));
        EXPECT_EQ(act(rq.form, rq.witness), q);
        for (long p = -4; p <= 4; ++p)
            for (long r = -4; r <= 4; ++r)
                for (long x = -4; x <= 4; ++x)
                    for (long s = -4; s <= 4; ++s) {
                        if (p * s - x * r != 1) continue;
                        EXPECT_EQ(reduce(act(q, {p, x, r, s})).form, rq.form);
                    }
    }
}

TEST(Forms, AutomorphsMatchSearch)
{
    auto d4 = disc(-4);
    auto d3 = disc(-3);
    auto a4 = automorphs(d4, principal_form(d4));
    auto a3 = automorphs(d3, principal_form(d3));
    EXPECT_EQ(a4.size(), 4u);
    EXPECT_EQ(a3.size(), 6u);
    EXPECT_EQ(std::set<UnimodMatrix>(a4.begin(), a4.end()), automorphs_brute(principal_form(d4), 2));
    EXPECT_EQ(std::set<UnimodMatrix>(a3.begin(), a3.end()), automorphs_brute(principal_form(d3), 2));
    for (long dk : {-3L, -4L, -20L, -23L}) {
        auto d = disc(dk);
        for (auto const & q : bounded_forms(d, 8)) {
            auto a = automorphs(d, q);
            EXPECT_EQ(int(a.size()), d.unit_count()) << q.str();
            auto brute = automorphs_brute(q, 8);  // entries of an automorph are bounded by a, |b|, c
            EXPECT_EQ(std::set<UnimodMatrix>(a.begin(), a.end()), brute) << q.str();
        }
    }
}

TEST(Forms, CoprimeNormalize)
{
    auto n = coprime_normalize(form(1, 0, 5), 6);
    EXPECT_EQ(n.form, form(1, 0, 5));
    EXPECT_EQ(n.g, UnimodMatrix::identity());
    auto m = coprime_normalize(form(2, 2, 3), 6);
    EXPECT_EQ(act(form(2, 2, 3), m.g), m.form);
    EXPECT_EQ(gcd(m.form.a, Int(6)), 1);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> modulus(2, 60);
    for (long dk : {-3L, -4L, -7L, -20L, -23L}) {
        auto d = disc(dk);
        auto fs = bounded_forms(d, 40);
        for (int t = 0; t < 100; ++t) {
            auto const & q = fs[t % fs.size()];
            long M = modulus(rng);
            auto r = coprime_normalize(q, M);
            EXPECT_EQ(act(q, r.g), r.form);
            EXPECT_EQ(r.g.det(), 1);
            EXPECT_EQ(gcd(r.form.a, Int(M)), 1) << q.str() << " " << M;
        }
    }
}
