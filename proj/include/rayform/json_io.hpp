#pragma once

#include <string>

#include <json.hpp>

#include "rayform/checks.hpp"
#include "rayform/modular.hpp"
#include "rayform/rayclass.hpp"

namespace rayform::json_io {

/// Insertion-ordered so key order is part of the output format.
using Json = nlohmann::ordered_json;

/// JSON number when it fits in 64 bits, otherwise a decimal string.
Json integer(Int const & x);
Json form(forms::QuadForm const & q);
Json matrix(forms::UnimodMatrix const & g);
Json matrix(qfield::IntMatrix2 const & m);
/// {"u":"p/q","v":"r/s"}.
Json field_element(qfield::FieldElement const & x);
/// {"re":"..","im":".."} at the working precision.
Json complex(bigfloat::Complex const & z, modular::Precision const & p);
/// {"dK", "ideal", "classes"} plus "table" and "invariant_factors" when filled.
Json class_group(rayclass::ClassGroup const & g);
Json descriptor(rayclass::GaloisDescriptor const & d, Int const & dq, int i);
Json check(checks::CheckResult const & r);

/// Two-space indented, trailing newline.
std::string dump(Json const & j);
/// Plain aligned rendering for --format text.
std::string render_text(Json const & j);

}  // namespace rayform::json_io
