#include "rayform/json_io.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rayform::json_io {

Json integer(Int const & x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(x);
    }
    return to_string(x);
}

Json form(forms::QuadForm const & q) { return {{"a", integer(q.a)}, {"b", integer(q.b)}, {"c", integer(q.c)}}; }

Json matrix(forms::UnimodMatrix const & g)
{
    return Json::array({Json::array({integer(g.p), integer(g.q)}), Json::array({integer(g.r), integer(g.s)})});
}

Json matrix(qfield::IntMatrix2 const & m)
{
    return Json::array({Json::array({integer(m.a11), integer(m.a12)}), Json::array({integer(m.a21), integer(m.a22)})});
}

Json field_element(qfield::FieldElement const & x) { return {{"u", to_string(x.u)}, {"v", to_string(x.v)}}; }

Json complex(bigfloat::Complex const & z, modular::Precision const & p)
{
    return {{"re", modular::to_string(z.re, p)}, {"im", modular::to_string(z.im, p)}};
}

Json class_group(rayclass::ClassGroup const & g)
{
    Json j;
    j["dK"] = integer(g.modulus.disc().dK());
    j["ideal"] = g.modulus.ideal().str();
    Json classes = Json::array();
    for (auto const & c : g.classes) classes.push_back(form(c.rep));
    j["classes"] = classes;
    if (!g.table.empty()) {
        j["table"] = g.table;
        Json f = Json::array();
        for (auto const & d : g.invariant_factors) f.push_back(integer(d));
        j["invariant_factors"] = f;
    }
    return j;
}

Json descriptor(rayclass::GaloisDescriptor const & d, Int const & dq, int i)
{
    return {{"a_inv", integer(d.a_inv)},
            {"d_Q", integer(dq)},
            {"eval_matrix", matrix(d.eval_matrix)},
            {"point", field_element(d.point)},
            {"label", std::to_string(i) + ":0," + to_string(d.a_inv) + "," + to_string(d.N)}};
}

Json check(checks::CheckResult const & r)
{
    Json j{{"name", r.name}, {"pass", r.pass}, {"measured", r.measured}};
    if (!r.threshold.empty()) j["threshold"] = r.threshold;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

std::string dump(Json const & j) { return j.dump(2) + "\n"; }

namespace {

std::string scalar(Json const & v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool all_scalars(Json const & a)
{
    return std::all_of(a.begin(), a.end(), [](Json const & v) { return v.is_primitive(); });
}

void grid(std::ostream & os, Json const & rows, std::string const & pad)
{
    std::size_t w = 1;
    for (auto const & row : rows)
        for (auto const & v : row) w = std::max(w, scalar(v).size());
    for (auto const & row : rows) {
        os << pad;
        bool first = true;
        for (auto const & v : row) {
            std::string s = scalar(v);
            os << (first ? "" : " ") << std::string(w - s.size(), ' ') << s;
            first = false;
        }
        os << "\n";
    }
}

void object_rows(std::ostream & os, Json const & objs, std::string const & pad)
{
    for (auto const & o : objs) {
        os << pad;
        if (!o.is_object()) {
            os << scalar(o) << "\n";
            continue;
        }
        bool first = true;
        for (auto const & [k, v] : o.items()) {
            os << (first ? "" : "  ") << k << "=" << (v.is_primitive() ? scalar(v) : v.dump());
            first = false;
        }
        os << "\n";
    }
}

void render(std::ostream & os, Json const & j, std::string const & pad)
{
    std::size_t w = 0;
    for (auto const & [k, v] : j.items()) w = std::max(w, k.size());
    for (auto const & [k, v] : j.items()) {
        std::string key = pad + k + std::string(w - k.size(), ' ');
        std::string bare = pad + k;
        if (v.is_primitive()) {
            os << key << "  " << scalar(v) << "\n";
        } else if (v.is_array() && all_scalars(v)) {
            os << key << "  [";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
            os << "]\n";
        } else if (v.is_array() && !v.empty() && v[0].is_array()) {
            os << bare << "\n";
            grid(os, v, pad + "  ");
        } else if (v.is_array()) {
            os << bare << "\n";
            object_rows(os, v, pad + "  ");
        } else {
            os << bare << "\n";
            render(os, v, pad + "  ");
        }
    }
}

}  // namespace

std::string render_text(Json const & j)
{
    std::ostringstream os;
    if (j.is_object()) {
        render(os, j, "");
    } else {
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace rayform::json_io
