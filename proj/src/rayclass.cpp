#include "rayform/rayclass.hpp"

#include <algorithm>
#include <map>

namespace rayform::rayclass {

using forms::act;

Modulus Modulus::make(Discriminant d, IdealTriple n)
{
    qfield::require_valid_triple(d, n);
    if (n == IdealTriple::unit()) throw ValidationError("modulus must be a proper ideal, got " + n.str());
    return Modulus(std::move(d), std::move(n));
}

void require_member(QuadForm const & q, Modulus const & m)
{
    forms::require_valid_form(m.disc(), q);
    if (gcd(q.a, m.N()) != 1) {
        throw ValidationError("leading coefficient of " + q.str() + " is not prime to " + to_string(m.N()));
    }
}

Int witness_slope(QuadForm const & q, Modulus const & m)
{
    Int const & N = m.N();
    Int shift = m.a2() / m.a1() - (m.disc().bK() - q.b) / 2;
    return floor_mod(inv_mod(q.a, N) * shift, N);
}

Int d_Q(QuadForm const & q, Modulus const & m)
{
    require_member(q, m);
    Int const & N = m.N();
    Int t = m.a1() * (q.b + m.disc().bK()) / 2;
    Int x = crt(floor_mod(m.a2() - t, N), N, 0, q.a);
    Int span = N * q.a;
    return floor_mod(x + t, span) - t;
}

IntMatrix2 nm_basis(QuadForm const & q, Modulus const & m)
{
    return {m.a1(), d_Q(q, m), 0, m.N() * q.a};
}

bool in_gamma_n(UnimodMatrix const & g, Modulus const & m)
{
    Int const & N = m.N();
    return g.det() == 1 && floor_mod(g.p - 1, N) == 0 && floor_mod(g.q, N / m.a1()) == 0 &&
           floor_mod(g.r, m.a1()) == 0 && floor_mod(g.s - 1, N) == 0;
}

namespace {

bool bottom_row_ok(UnimodMatrix const & g, Int const & k, Modulus const & m)
{
    return floor_mod(g.r, m.a1()) == 0 && floor_mod(g.s - 1 - k * g.r, m.N()) == 0;
}

}  // namespace

std::pair<Int, Int> t_normalize(UnimodMatrix const & g, Int const & k, Modulus const & m)
{
    if (!bottom_row_ok(g, k, m)) throw ValidationError("t_normalize: bottom row fails the congruences");
    Int mm = -k;
    Int q1 = -g.p * k + g.q;
    Int s1 = -g.r * k + g.s;
    Int M = m.N() / m.a1();
    Int nn = M == 1 ? Int(0) : floor_mod(-q1 * inv_mod(s1, M), M);
    if (!in_gamma_n(UnimodMatrix::T(nn) * g * UnimodMatrix::T(mm), m)) {
        throw ConsistencyError("t_normalize: translate is not in Gamma_n");
    }
    return {mm, nn};
}

std::optional<UnimodMatrix> equivalent(QuadForm const & q, QuadForm const & q2, Modulus const & m)
{
    require_member(q, m);
    require_member(q2, m);
    auto r1 = forms::reduce(q);
    auto r2 = forms::reduce(q2);
    if (r1.form != r2.form) return std::nullopt;
    UnimodMatrix g0 = r2.witness.inverse() * r1.witness;
    if (act(q2, g0) != q) throw ConsistencyError("reduction witnesses do not connect " + q.str() + " and " + q2.str());
    Int k = witness_slope(q, m);
    for (auto const & h : forms::automorphs(m.disc(), q)) {
        UnimodMatrix alpha = g0 * h;
        if (bottom_row_ok(alpha, k, m)) return alpha;
    }
    return std::nullopt;
}

bool equivalent_oracle(QuadForm const & q, QuadForm const & q2, Modulus const & m)
{
    require_member(q, m);
    require_member(q2, m);
    auto const & d = m.disc();
    using qfield::FieldElement;
    // [a*omega_q, a] and [-a'*conj(omega_q2), a'] = a' * conj([omega_q2, 1])
    FieldElement g1[] = {{1, Rational((d.bK() - q.b) / 2)}, FieldElement::integer(q.a)};
    FieldElement g2[] = {{1, Rational((d.bK() + q2.b) / 2)}, FieldElement::integer(q2.a)};
    auto I = qfield::canonicalize_generators(d, g1);
    auto J = qfield::canonicalize_generators(d, g2);
    // [omega_q,1][omega_q2,1]^-1 = I * J / a
    auto P = qfield::ideal_product(d, I, J);
    for (auto const & mu : qfield::minimal_norm_elements(d, qfield::to_lattice(P))) {
        if (qfield::is_mult_congruent_one(d, qfield::scale(Rational(1, q.a), mu), m.ideal())) return true;
    }
    return false;
}

Decomposition decompose(UnimodMatrix const & alpha, QuadForm const & q, Modulus const & m)
{
    Int k = witness_slope(q, m);
    auto [mm, nn] = t_normalize(alpha, k, m);
    UnimodMatrix gamma = UnimodMatrix::T(nn) * alpha * UnimodMatrix::T(mm);
    Decomposition out{-nn, gamma, -mm};
    if (UnimodMatrix::T(out.u) * gamma * UnimodMatrix::T(out.v) != alpha) {
        throw ConsistencyError("decompose: factors do not multiply back");
    }
    if (floor_mod(gamma.r * out.v + gamma.s - 1 - k * gamma.r, m.N()) != 0) {
        throw ConsistencyError("decompose: translate violates the congruence");
    }
    return out;
}

bool in_VQ(QuadForm const & q, RowVec const & w, Int const & N)
{
    return gcd(N, q.eval(w.v, -w.u)) == 1;
}

std::vector<std::pair<Int, Int>> u_K(Discriminant const & d)
{
    if (d.dK() == -4) return {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
    if (d.dK() == -3) return {{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, 1}, {-1, -1}};
    return {{0, 1}, {0, -1}};
}

namespace {

// w * P * X * M mod N for the fixed matrices of the ~Q relation.
struct SimFrame {
    qfield::IntMatrix2 P;  // [[1, (bK-b)/2], [0, a]]
    qfield::RatMatrix2 M;  // [[N/a1, -a2/a1], [0, 1]]
    std::vector<qfield::IntMatrix2> U;
    Int N;
};

SimFrame sim_frame(QuadForm const & q, Modulus const & m)
{
    auto const & d = m.disc();
    SimFrame f{{1, (d.bK() - q.b) / 2, 0, q.a},
               {Rational(m.N() / m.a1()), Rational(-m.a2() / m.a1()), 0, 1},
               {},
               m.N()};
    for (auto const & [mu, nu] : u_K(d)) f.U.push_back({nu - mu * d.bK(), -mu * d.cK(), mu, nu});
    return f;
}

RowVec sim_key(SimFrame const & f, RowVec const & w, qfield::IntMatrix2 const & X)
{
    auto PX = qfield::to_rational(f.P * X) * f.M;
    Rational x = Rational(w.u) * PX.a11 + Rational(w.v) * PX.a21;
    Rational y = Rational(w.u) * PX.a12 + Rational(w.v) * PX.a22;
    return {floor_mod(to_integer(x), f.N), floor_mod(to_integer(y), f.N)};
}

}  // namespace

bool sim_Q(QuadForm const & q, RowVec const & w1, RowVec const & w2, Modulus const & m)
{
    require_member(q, m);
    if (!in_VQ(q, w1, m.N()) || !in_VQ(q, w2, m.N())) throw ValidationError("sim_Q: vector outside V_Q");
    auto f = sim_frame(q, m);
    RowVec left = sim_key(f, w1, qfield::IntMatrix2::identity());
    for (auto const & U : f.U) {
        if (sim_key(f, w2, U) == left) return true;
    }
    return false;
}

std::vector<RowVec> vq_classes(QuadForm const & q, Modulus const & m)
{
    require_member(q, m);
    Int const & N = m.N();
    auto f = sim_frame(q, m);
    std::map<RowVec, std::vector<std::size_t>> by_key;
    std::vector<RowVec> members;
    for (Int u = 0; u < N; ++u) {
        for (Int v = 0; v < N; ++v) {
            RowVec w{u, v};
            if (!in_VQ(q, w, N)) continue;
            by_key[sim_key(f, w, qfield::IntMatrix2::identity())].push_back(members.size());
            members.push_back(w);
        }
    }
    std::vector<bool> seen(members.size(), false);
    std::vector<RowVec> reps;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (seen[i]) continue;
        reps.push_back(members[i]);
        for (auto const & U : f.U) {
            auto it = by_key.find(sim_key(f, members[i], U));
            if (it == by_key.end()) continue;
            for (auto j : it->second) seen[j] = true;
        }
    }
    return reps;
}

UnimodMatrix lift_bottom_row(RowVec const & w, Int const & N)
{
    if (gcd(gcd(N, w.u), w.v) != 1) throw ValidationError("lift_bottom_row: row is not primitive modulo N");
    for (long long t = 0;; ++t) {
        for (long long k = -t; k <= t; ++k) {
            long long rest = t - std::abs(k);
            for (long long l : {-rest, rest}) {
                Int u = w.u + k * N, v = w.v + l * N;
                if (gcd(u, v) == 1) {
                    auto [g, x, y] = ext_gcd(u, v);
                    return UnimodMatrix::checked(y, -x, u, v);
                }
                if (rest == 0) break;
            }
        }
    }
}

ClassGroup enumerate(Modulus const & m)
{
    auto const & d = m.disc();
    Int const & N = m.N();
    std::vector<QuadForm> reps;
    for (auto const & r : forms::reduced_forms(d)) {
        auto [q, g] = forms::coprime_normalize(r, N);
        for (auto const & w : vq_classes(q, m)) {
            QuadForm rep = act(q, lift_bottom_row(w, N).inverse());
            require_member(rep, m);
            reps.push_back(rep);
        }
    }

    Int expected = qfield::ray_class_number_oracle(d, m.ideal());
    if (Int(reps.size()) != expected) {
        throw ConsistencyError("enumerated " + std::to_string(reps.size()) + " classes, oracle gives " +
                               to_string(expected));
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (equivalent(reps[i], reps[j], m)) {
                throw ConsistencyError("representatives " + reps[i].str() + " and " + reps[j].str() + " coincide");
            }

    QuadForm q0 = forms::principal_form(d);
    auto id = std::find_if(reps.begin(), reps.end(), [&](QuadForm const & q) { return equivalent(q, q0, m).has_value(); });
    if (id == reps.end()) throw ConsistencyError("no representative of the identity class");
    std::iter_swap(reps.begin(), id);
    std::sort(reps.begin() + 1, reps.end());

    ClassGroup out{m, {}, {}, {}};
    for (auto & q : reps) out.classes.push_back({std::move(q)});
    return out;
}

QuadForm compose(QuadForm const & q, QuadForm const & q2, Modulus const & m)
{
    require_member(q, m);
    require_member(q2, m);
    auto const & d = m.disc();
    Int const & N = m.N();

    auto [q3, gamma] = forms::coprime_normalize(q2, 2 * q.a * N * abs(d.dK()));  // q3 == q2^gamma
    Int const & a = q.a;
    Int const & a3 = q3.a;
    if (gcd(gcd(a, a3), (q.b + q3.b) / 2) != 1) throw ConsistencyError("compose: forms are not concordant");

    // b and b3 have the parity of dK, and gcd(a, a3) = 1
    Int t = floor_mod((q3.b - q.b) / 2 * inv_mod(a, a3), a3);
    Int B = floor_mod(q.b + 2 * a * t, 2 * a * a3);
    if (floor_mod(B - q3.b, 2 * a3) != 0 || floor_mod(B * B - d.dK(), 4 * a * a3) != 0) {
        throw ConsistencyError("compose: middle coefficient fails its congruences");
    }

    // [omega_q,1][omega_q2,1] = j^-1 [nu, 1] with j = r*omega_q3 + s
    FieldElement nu{Rational(1, a * a3), Rational(d.bK() - B, 2 * a * a3)};
    FieldElement j = qfield::scale(Rational(gamma.r), forms::omega(d, q3)) + FieldElement::integer(gamma.s);
    FieldElement e1 = qfield::div(d, nu, j);
    FieldElement e2 = qfield::div(d, FieldElement::integer(1), j);
    // u*e1 + v*e2 = 1
    Rational det = e1.u * e2.v - e2.u * e1.v;
    if (det == 0) throw ConsistencyError("compose: degenerate basis");
    Rational u = -e2.u / det;
    Rational v = e1.u / det;
    if (!is_integer(u) || !is_integer(v)) throw ConsistencyError("compose: 1 is not in the product lattice");

    UnimodMatrix sigma = lift_bottom_row({to_integer(u), to_integer(v)}, N);
    QuadForm F{a * a3, B, (B * B - d.dK()) / (4 * a * a3)};
    QuadForm out = act(F, sigma.inverse());
    require_member(out, m);
    return out;
}

int class_index(ClassGroup const & g, QuadForm const & q)
{
    auto target = forms::reduce(q).form;
    for (std::size_t i = 0; i < g.classes.size(); ++i) {
        auto const & rep = g.classes[i].rep;
        if (forms::reduce(rep).form != target) continue;
        if (equivalent(q, rep, g.modulus)) return static_cast<int>(i);
    }
    throw ConsistencyError("form " + q.str() + " matches no class representative");
}

GaloisDescriptor descriptor(QuadForm const & q, Modulus const & m)
{
    require_member(q, m);
    Int dq = d_Q(q, m);
    if (dq % q.a != 0) throw ConsistencyError("descriptor: d_Q is not divisible by a");
    return {m.N(),
            inv_mod(q.a, m.N()),
            {m.a1(), dq / q.a, 0, m.N()},
            {Rational(1, q.a), Rational(m.disc().bK() + q.b, 2 * q.a)},
            true};
}

}  // namespace rayform::rayclass
