#include "rayform/checks.hpp"

#include <algorithm>

namespace rayform::checks {

using bigfloat::Complex;
using bigfloat::Real;
using forms::QuadForm;
using forms::UnimodMatrix;
using modular::FrickeLabel;
using modular::Precision;
using rayclass::ClassGroup;

namespace {

long uniform(Rng & rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Complex random_tau(Rng & rng, Precision const & p)
{
    return {p.real(Rational(uniform(rng, -500, 500), 1000)), p.real(Rational(uniform(rng, 300, 2000), 1000))};
}

FrickeLabel random_label(Rng & rng, int i)
{
    long N = uniform(rng, 2, 12);
    long r = 0, s = 0;
    while (r == 0 && s == 0) {
        r = uniform(rng, 0, N - 1);
        s = uniform(rng, 0, N - 1);
    }
    return FrickeLabel::make(i, r, s, N);
}

std::string tol_text(int tol_exp) { return "1e-" + std::to_string(tol_exp); }

CheckResult numeric_result(std::string name, Real const & worst, int tol_exp, Precision const & p, std::string detail = {})
{
    CheckResult r{std::move(name), worst < Real::pow10(-tol_exp, p.bits()), short_residual(worst), tol_text(tol_exp),
                  std::move(detail)};
    return r;
}

CheckResult exact_result(std::string name, long failures, long total, std::string detail = {})
{
    return {std::move(name), failures == 0,
            std::to_string(failures) + " failures in " + std::to_string(total), "", std::move(detail)};
}

}  // namespace

Real relative_gap(Complex const & x, Complex const & y)
{
    Real scale = abs(y);
    Real one(1, scale.bits());
    if (scale < one) scale = one;
    return abs(x - y) / scale;
}

std::string short_residual(Real const & r)
{
    if (r.is_zero()) return "0";
    return r.str(3);
}

UnimodMatrix random_gamma1(Int const & N, Rng & rng)
{
    while (true) {
        Int r = N * uniform(rng, -3, 3);
        Int s = 1 + N * uniform(rng, -3, 3);
        if (gcd(r, s) != 1) continue;
        auto [g, x, y] = ext_gcd(s, r);  // s*x + r*y = 1
        return UnimodMatrix::checked(x, -y, r, s);
    }
}

QuadForm random_translate(QuadForm const & q, rayclass::Modulus const & m, Rng & rng)
{
    return forms::act(q, random_gamma1(m.N(), rng));
}

UnimodMatrix random_sl2(Rng & rng, int length)
{
    UnimodMatrix g = UnimodMatrix::T(uniform(rng, -3, 3));
    for (int k = 0; k < length; ++k) g = g * UnimodMatrix::S() * UnimodMatrix::T(uniform(rng, -3, 3));
    return g;
}

CheckResult class_number(ClassGroup const & g)
{
    Int expected = qfield::ray_class_number_oracle(g.modulus.disc(), g.modulus.ideal());
    Int got = g.classes.size();
    return {"class_number_matches_oracle", got == expected, to_string(got), "", "oracle " + to_string(expected)};
}

CheckResult oracle_agreement(ClassGroup const & g, Rng & rng, int pairs)
{
    auto const & m = g.modulus;
    long n = static_cast<long>(g.classes.size());
    long mismatches = 0, same = 0;
    for (int t = 0; t < pairs; ++t) {
        long i = uniform(rng, 0, n - 1);
        long j = t % 3 == 0 ? i : uniform(rng, 0, n - 1);
        QuadForm x = random_translate(g.classes[i].rep, m, rng);
        QuadForm y = random_translate(g.classes[j].rep, m, rng);
        bool by_forms = rayclass::equivalent(x, y, m).has_value();
        bool definition = rayclass::equivalent_oracle(x, y, m);
        if (by_forms != definition || by_forms != (i == j)) ++mismatches;
        if (by_forms) ++same;
    }
    return exact_result("equivalent_matches_definition", mismatches, pairs,
                        std::to_string(same) + " equivalent pairs");
}

CheckResult table_axioms(ClassGroup const & g)
{
    bool ok = rayclass::is_abelian_group_table(g.table);
    Int order = 1;
    for (auto const & d : g.invariant_factors) order *= d;
    ok = ok && order == Int(g.classes.size());
    std::string f;
    for (auto const & d : g.invariant_factors) f += (f.empty() ? "" : ",") + to_string(d);
    return {"table_is_abelian_group", ok, "[" + f + "]", "", "invariant factors"};
}

CheckResult serial_matches_parallel(ClassGroup const & g)
{
    auto serial = rayclass::table_serial(g.modulus);
    bool ok = serial.table == g.table && serial.invariant_factors == g.invariant_factors;
    return {"serial_table_matches_parallel", ok, ok ? "identical" : "differs", "", ""};
}

CheckResult composition_well_defined(ClassGroup const & g, Rng & rng, int trials)
{
    auto const & m = g.modulus;
    long n = static_cast<long>(g.classes.size());
    long failures = 0;
    for (int t = 0; t < trials; ++t) {
        long i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
        QuadForm x = random_translate(g.classes[i].rep, m, rng);
        QuadForm y = random_translate(g.classes[j].rep, m, rng);
        QuadForm c = rayclass::compose(x, y, m);
        if (rayclass::class_index(g, c) != g.table[i][j]) ++failures;
    }
    return exact_result("composition_well_defined", failures, trials);
}

CheckResult descriptor_congruences(ClassGroup const & g)
{
    auto const & m = g.modulus;
    Int const & N = m.N();
    long failures = 0, total = 0;
    Rng rng(7);
    for (auto const & c : g.classes) {
        for (int t = 0; t < 4; ++t) {
            QuadForm q = t == 0 ? c.rep : random_translate(c.rep, m, rng);
            ++total;
            Int dq = rayclass::d_Q(q, m);
            auto desc = rayclass::descriptor(q, m);
            Int base = -m.a1() * (q.b + m.disc().bK()) / 2;
            bool ok = floor_mod(dq - base - m.a2(), N) == 0 && dq % q.a == 0 && dq >= base && dq < base + N * q.a &&
                      floor_mod(desc.a_inv * q.a, N) == 1 && desc.a_inv >= 1 && desc.a_inv < N &&
                      desc.eval_matrix.det() == m.a1() * N;
            if (!ok) ++failures;
        }
    }
    return exact_result("descriptor_congruences", failures, total);
}

CheckResult j_special_values(Precision const & p, int tol_exp)
{
    Complex i_point{p.real(0), p.real(1)};
    Complex rho{-(p.real(1) / p.real(2)), sqrt(p.real(3)) / p.real(2)};
    Real e1 = abs(modular::eisenstein_j(i_point, p) - p.complex(1728));
    Real e2 = abs(modular::eisenstein_j(rho, p));
    Real worst = e1 > e2 ? e1 : e2;
    return numeric_result("j_special_values", worst, tol_exp, p,
                          "|j(i)-1728| = " + short_residual(e1) + ", |j(rho)| = " + short_residual(e2));
}

CheckResult fricke_relations(Precision const & p, int tol_exp, Rng & rng, int samples, bool stated)
{
    Complex c2 = stated ? Complex(p.real(Rational(1, 20736)), p.real(0)) : p.complex(46656);
    Complex c3 = stated ? Complex(p.real(Rational(1, 373248)), p.real(0)) : p.complex(80621568);
    Real worst(0, p.bits());
    Real guard = Real::pow10(-5, p.bits());
    int done = 0;
    while (done < samples) {
        FrickeLabel l = random_label(rng, 1);
        Complex tau = random_tau(rng, p);
        Complex j = modular::eisenstein_j(tau, p);
        Complex jm = j - p.complex(1728);
        if (abs(j) < guard || abs(jm) < guard) continue;
        Complex f1 = modular::fricke(l, tau, p);
        Complex f2 = modular::fricke(l.with_i(2), tau, p);
        Complex f3 = modular::fricke(l.with_i(3), tau, p);
        Real g2 = relative_gap(f2, c2 * f1 * f1 / jm);
        Real g3 = relative_gap(f3, c3 * f1 * f1 * f1 / (j * jm));
        if (g2 > worst) worst = g2;
        if (g3 > worst) worst = g3;
        ++done;
    }
    return numeric_result(stated ? "fricke_relations_stated_constants" : "fricke_relations_definitional_constants",
                          worst, tol_exp, p, std::to_string(samples) + " samples");
}

CheckResult transformation_law(Precision const & p, int tol_exp, Rng & rng, int samples)
{
    Real worst(0, p.bits());
    for (int t = 0; t < samples; ++t) {
        FrickeLabel l = random_label(rng, static_cast<int>(uniform(rng, 1, 3)));
        UnimodMatrix g = random_sl2(rng, static_cast<int>(uniform(rng, 1, 4)));
        Complex tau = random_tau(rng, p);
        Complex lhs = modular::fricke(l, modular::mobius(g, tau), p);
        Complex rhs = modular::fricke_unreduced(l.times(g), tau, p);
        Real gap = relative_gap(lhs, rhs);
        if (gap > worst) worst = gap;
    }
    return numeric_result("fricke_transformation_law", worst, tol_exp, p, std::to_string(samples) + " samples");
}

CheckResult weber_identity_class(rayclass::Modulus const & m, Precision const & p, int tol_exp)
{
    auto const & d = m.disc();
    int i = modular::natural_index(d);
    qfield::FieldElement xi1{Rational(m.a1()), Rational(m.a2())};
    qfield::FieldElement xi2 = qfield::FieldElement::integer(m.N());
    qfield::FieldElement xi = qfield::scale(Rational(1, m.N()), xi1);
    Complex lhs = modular::fricke(FrickeLabel::make(i, 0, 1, m.N()), modular::to_complex(d, xi, p), p);
    Complex rhs = modular::weber(d, p.complex(1), xi1, xi2, p);
    return numeric_result("fricke_matches_weber_at_identity", relative_gap(lhs, rhs), tol_exp, p);
}

CheckResult descriptor_class_invariance(ClassGroup const & g, Precision const & p, int tol_exp, Rng & rng,
                                        int per_class)
{
    auto const & m = g.modulus;
    auto const & d = m.disc();
    int i = modular::natural_index(d);
    Real worst(0, p.bits());
    for (auto const & c : g.classes) {
        Complex base = modular::eval_descriptor(d, rayclass::descriptor(c.rep, m), i, p);
        for (int t = 0; t < per_class; ++t) {
            QuadForm q = random_translate(c.rep, m, rng);
            if (!rayclass::equivalent(q, c.rep, m)) throw ConsistencyError("translate left its class");
            Real gap = relative_gap(modular::eval_descriptor(d, rayclass::descriptor(q, m), i, p), base);
            if (gap > worst) worst = gap;
        }
    }
    return numeric_result("descriptor_constant_on_classes", worst, tol_exp, p,
                          std::to_string(per_class) + " translates per class");
}

CheckResult descriptor_two_routes(ClassGroup const & g, Precision const & p, int tol_exp)
{
    auto const & m = g.modulus;
    auto const & d = m.disc();
    int i = modular::natural_index(d);
    Real worst(0, p.bits());
    for (auto const & c : g.classes) {
        Complex a = modular::eval_descriptor(d, rayclass::descriptor(c.rep, m), i, p);
        Complex b = modular::fricke_invariant(m, c.rep, i, p);
        Real gap = relative_gap(a, b);
        if (gap > worst) worst = gap;
    }
    // identity class: c = O_K gives f_[0,1/N](xi)
    qfield::FieldElement xi{Rational(m.a1(), m.N()), Rational(m.a2(), m.N())};
    Complex h0 = modular::fricke(FrickeLabel::make(i, 0, 1, m.N()), modular::to_complex(d, xi, p), p);
    Real gap0 = relative_gap(modular::eval_descriptor(d, rayclass::descriptor(g.classes[0].rep, m), i, p), h0);
    if (gap0 > worst) worst = gap0;
    return numeric_result("descriptor_matches_fricke_invariant", worst, tol_exp, p);
}

CheckResult descriptor_separation(ClassGroup const & g, Precision const & p)
{
    auto const & m = g.modulus;
    auto const & d = m.disc();
    int i = modular::natural_index(d);
    std::vector<Complex> values;
    for (auto const & c : g.classes) values.push_back(modular::eval_descriptor(d, rayclass::descriptor(c.rep, m), i, p));
    int sep_exp = p.digits() / 4;
    Real limit = Real::pow10(-sep_exp, p.bits());
    Real least(1, p.bits());
    bool any = false;
    std::string close;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            Real gap = relative_gap(values[a], values[b]);
            if (!any || gap < least) least = gap;
            any = true;
            if (gap < limit) close += (close.empty() ? "" : " ") + std::to_string(a) + "~" + std::to_string(b);
        }
    }
    if (!any) least = Real(0, p.bits());
    CheckResult r{"descriptor_values_separated", !any || close.empty(), any ? short_residual(least) : "n/a",
                  "> " + tol_text(sep_exp), close.empty() ? "" : "near-collisions " + close};
    return r;
}

}  // namespace rayform::checks
