#pragma once

#include <random>
#include <string>
#include <vector>

#include "rayform/modular.hpp"
#include "rayform/rayclass.hpp"

/// Property suites shared by the verify command and the acceptance runner.
/// Every check is deterministic for a given seed.
namespace rayform::checks {

using Rng = std::mt19937_64;

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string measured;   // residual or count, as text
    std::string threshold;  // empty for exact checks
    std::string detail;
};

/// Random element of Gamma_1(N) with small entries.
forms::UnimodMatrix random_gamma1(Int const & N, Rng & rng);
/// q^gamma for a random gamma in Gamma_1(N); always in the class of q.
forms::QuadForm random_translate(forms::QuadForm const & q, rayclass::Modulus const & m, Rng & rng);
/// Random element of SL2(Z) built from a short word in S and T.
forms::UnimodMatrix random_sl2(Rng & rng, int length);

CheckResult class_number(rayclass::ClassGroup const & g);
CheckResult oracle_agreement(rayclass::ClassGroup const & g, Rng & rng, int pairs);
CheckResult table_axioms(rayclass::ClassGroup const & g);
CheckResult serial_matches_parallel(rayclass::ClassGroup const & g);
CheckResult composition_well_defined(rayclass::ClassGroup const & g, Rng & rng, int trials);
CheckResult descriptor_congruences(rayclass::ClassGroup const & g);

CheckResult j_special_values(modular::Precision const & p, int tol_exp);
/// f2 = c2 f1^2/(j - 1728) and f3 = c3 f1^3/(j (j - 1728)). When `stated`,
/// c2 = 1/20736 and c3 = 1/373248 as stated; otherwise c2 = 46656 and
/// c3 = 80621568, which follow from the definitions of g2, g3, Delta and j.
/// Residuals are relative; samples with |j| or |j - 1728| below 1e-5 are
/// redrawn.
CheckResult fricke_relations(modular::Precision const & p, int tol_exp, Rng & rng, int samples, bool stated);
CheckResult transformation_law(modular::Precision const & p, int tol_exp, Rng & rng, int samples);
/// f_[0,1/N](xi) = h(1; n) with xi = (a1 tau + a2)/N, i = |O_K^*|/2.
CheckResult weber_identity_class(rayclass::Modulus const & m, modular::Precision const & p, int tol_exp);
CheckResult descriptor_class_invariance(rayclass::ClassGroup const & g, modular::Precision const & p, int tol_exp,
                                        Rng & rng, int per_class);
CheckResult descriptor_two_routes(rayclass::ClassGroup const & g, modular::Precision const & p, int tol_exp);
/// Reports the least pairwise distance between class values; passes when it
/// exceeds 10^-(digits/4). Near-collisions are named in `detail`.
CheckResult descriptor_separation(rayclass::ClassGroup const & g, modular::Precision const & p);

/// Relative distance |x - y| / max(1, |y|).
bigfloat::Real relative_gap(bigfloat::Complex const & x, bigfloat::Complex const & y);
/// "1.2e-45"-style short form of a nonnegative residual; "0" for exact zero.
std::string short_residual(bigfloat::Real const & r);

}  // namespace rayform::checks
