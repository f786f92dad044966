#include <algorithm>
#include <exception>
#include <mutex>

#include "rayform/rayclass.hpp"

namespace rayform::rayclass {

namespace {

struct Lookup {
    std::vector<QuadForm> reduced;  // reduced form of each representative
};

int locate(ClassGroup const & g, Lookup const & lk, QuadForm const & q)
{
    auto target = forms::reduce(q).form;
    for (std::size_t i = 0; i < g.classes.size(); ++i) {
        if (lk.reduced[i] != target) continue;
        if (equivalent(q, g.classes[i].rep, g.modulus)) return static_cast<int>(i);
    }
    throw ConsistencyError("composite " + q.str() + " matches no class representative");
}

Lookup make_lookup(ClassGroup const & g)
{
    Lookup lk;
    for (auto const & c : g.classes) lk.reduced.push_back(forms::reduce(c.rep).form);
    return lk;
}

void finish(ClassGroup & g)
{
    if (!is_abelian_group_table(g.table)) throw ConsistencyError("composition table is not an abelian group law");
    g.invariant_factors = invariant_factors(g.table);
    Int order = 1;
    for (auto const & d : g.invariant_factors) order *= d;
    if (order != Int(g.classes.size())) throw ConsistencyError("invariant factors do not multiply to the class number");
}

}  // namespace

ClassGroup table_serial(Modulus const & m)
{
    ClassGroup g = enumerate(m);
    auto lk = make_lookup(g);
    std::size_t n = g.classes.size();
    g.table.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.table[i][j] = locate(g, lk, compose(g.classes[i].rep, g.classes[j].rep, m));
    finish(g);
    return g;
}

ClassGroup table(Modulus const & m)
{
    ClassGroup g = enumerate(m);
    auto lk = make_lookup(g);
    long long n = static_cast<long long>(g.classes.size());
    g.table.assign(n, std::vector<int>(n, -1));

    std::exception_ptr failure;
    std::mutex failure_lock;
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
        for (long long j = 0; j < n; ++j) {
            try {
                g.table[i][j] = locate(g, lk, compose(g.classes[i].rep, g.classes[j].rep, m));
            } catch (...) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    finish(g);
    return g;
}

bool is_abelian_group_table(std::vector<std::vector<int>> const & t)
{
    std::size_t n = t.size();
    if (n == 0) return false;
    for (auto const & row : t)
        if (row.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> row_hit(n, false), col_hit(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            int x = t[i][j], y = t[j][i];
            if (x < 0 || static_cast<std::size_t>(x) >= n || row_hit[x]) return false;
            if (y < 0 || static_cast<std::size_t>(y) >= n || col_hit[y]) return false;
            row_hit[x] = col_hit[y] = true;
            if (x != y) return false;
        }
        if (t[0][i] != static_cast<int>(i)) return false;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (t[t[i][j]][k] != t[i][t[j][k]]) return false;
    return true;
}

std::vector<Int> invariant_factors(std::vector<std::vector<int>> const & t)
{
    std::size_t n = t.size();
    // members of H as a bitmap; order of x in G/H is the least k with x^k in H
    std::vector<bool> in_h(n, false);
    in_h[0] = true;
    std::size_t h_size = 1;
    std::vector<long long> found;
    while (h_size < n) {
        int best = -1;
        long long best_order = 0;
        for (std::size_t x = 0; x < n; ++x) {
            long long k = 1;
            int y = static_cast<int>(x);
            while (!in_h[y]) {
                y = t[y][x];
                ++k;
            }
            if (k > best_order) {
                best_order = k;
                best = static_cast<int>(x);
            }
        }
        // H <- H * <best>; cosets H*best^e for e < best_order cover it
        std::vector<int> members;
        for (std::size_t y = 0; y < n; ++y)
            if (in_h[y]) members.push_back(static_cast<int>(y));
        int power = 0;
        for (long long e = 0; e < best_order; ++e) {
            for (int h : members) {
                int z = t[h][power];
                if (!in_h[z]) {
                    in_h[z] = true;
                    ++h_size;
                }
            }
            power = t[power][best];
        }
        found.push_back(best_order);
    }
    std::reverse(found.begin(), found.end());
    std::vector<Int> out(found.begin(), found.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] % out[i - 1] != 0) throw ConsistencyError("invariant factors fail the divisibility chain");
    return out;
}

}  // namespace rayform::rayclass
