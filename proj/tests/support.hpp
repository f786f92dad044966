#pragma once

#include <random>
#include <vector>

#include "rayform/forms.hpp"
#include "rayform/qfield.hpp"
#include "rayform/rayclass.hpp"

namespace rayform::support {

using forms::QuadForm;
using forms::UnimodMatrix;
using qfield::Discriminant;
using qfield::FieldElement;
using qfield::IdealTriple;

inline Discriminant disc(long d) { return Discriminant::make(Int(d)); }
inline rayclass::Modulus modulus(long d, long a1, long a2, long c) { return rayclass::Modulus::make(disc(d), {a1, a2, c}); }
inline QuadForm form(long a, long b, long c) { return {a, b, c}; }

/// Positive definite primitive forms of discriminant d with 0 < a, c <= bound.
inline std::vector<QuadForm> bounded_forms(Discriminant const & d, long bound)
{
    std::vector<QuadForm> out;
    for (long a = 1; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            Int num = Int(b) * b - d.dK();
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c > bound) continue;
            QuadForm q{a, b, c};
            if (forms::is_valid_form(d, q)) out.push_back(q);
        }
    return out;
}

/// Canonical triples with c <= max_c other than O_K; validity judged by the
/// lattice being closed under multiplication by tau.
inline std::vector<IdealTriple> small_ideals(Discriminant const & d, long max_c)
{
    std::vector<IdealTriple> out;
    for (long c = 1; c <= max_c; ++c)
        for (long a1 = 1; a1 <= c; ++a1) {
            if (c % a1) continue;
            for (long a2 = 0; a2 < c; a2 += a1) {
                IdealTriple t{a1, a2, c};
                if (t == IdealTriple::unit()) continue;
                auto tau = FieldElement::tau();
                if (qfield::contains(t, qfield::mul(d, tau, t.first())) && qfield::contains(t, qfield::mul(d, tau, t.second())))
                    out.push_back(t);
            }
        }
    return out;
}

inline UnimodMatrix random_sl2(std::mt19937_64 & rng, int len)
{
    std::uniform_int_distribution<int> pick(-3, 3);
    UnimodMatrix g = UnimodMatrix::identity();
    for (int i = 0; i < len; ++i) g = g * UnimodMatrix::T(pick(rng)) * UnimodMatrix::S();
    return g;
}

}  // namespace rayform::support
