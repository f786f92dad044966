#include <set>

#include "rayform/forms.hpp"
#include "rayform/qfield.hpp"

namespace rayform::qfield {

Int ray_class_number_oracle(Discriminant const & d, IdealTriple const & n)
{
    require_valid_triple(d, n);
    if (n == IdealTriple::unit()) throw ValidationError("ray_class_number_oracle: modulus must be nontrivial");

    Int class_number = forms::reduced_forms(d).size();

    // residues x*tau + y with 0 <= x < a1, 0 <= y < c
    Int invertible = 0;
    FieldElement const tau = FieldElement::tau();
    for (Int x = 0; x < n.a1; ++x) {
        for (Int y = 0; y < n.c; ++y) {
            FieldElement r{Rational(x), Rational(y)};
            if (r.is_zero()) continue;
            FieldElement gens[] = {r, mul(d, tau, r), n.first(), n.second()};
            if (canonicalize_generators(d, gens) == IdealTriple::unit()) ++invertible;
        }
    }

    std::set<std::pair<Rational, Rational>> image;
    for (auto const & z : unit_group(d)) {
        auto red = reduce_mod(n, z);
        image.emplace(red.u, red.v);
    }
    Int image_size = image.size();

    Int total = class_number * invertible;
    if (total % image_size != 0) throw ConsistencyError("unit image order does not divide the residue count");
    return total / image_size;
}

}  // namespace rayform::qfield
