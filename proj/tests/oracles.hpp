#pragma once

// Slow reference implementations. Each one works from definitions only and
// shares no code path with the library routine it is compared against.

#include "finorder/hsets.hpp"
#include "finorder/kripke.hpp"
#include "finorder/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using finorder::FinitePreorder;
using finorder::KripkeFrame;
using finorder::Mask;
using finorder::hsets::Id;
using finorder::hsets::Universe;

inline bool in(Mask s, int i) { return (s >> i) & 1u; }

/// Members, members of members, ...; an atom contributes the atoms strictly
/// below it in the base order.
inline void tc_into(const Universe& u, Id x, std::set<Id>& out)
{
    if (u.is_atom(x)) {
        const auto& b = u.base();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b.less(i, u.atom_index(x)))
                out.insert(static_cast<Id>(i));
        return;
    }
    for (Id c : u.children(x)) {
        out.insert(c);
        tc_into(u, c, out);
    }
}

inline std::set<Id> tc(const Universe& u, Id x)
{
    std::set<Id> out;
    tc_into(u, x, out);
    return out;
}

inline bool lt(const Universe& u, Id x, Id y) { return tc(u, y).count(x) != 0; }

/// Subsets of pool with >= 2 pairwise incomparable elements, by bitmask.
inline std::set<std::vector<Id>> antichains(const Universe& u, const std::vector<Id>& pool)
{
    std::set<std::vector<Id>> out;
    const int n = static_cast<int>(pool.size());
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (__builtin_popcountll(s) < 2)
            continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (in(s, i) && in(s, j) && i != j && lt(u, pool[i], pool[j]))
                    ok = false;
        if (!ok)
            continue;
        std::vector<Id> a;
        for (int i = 0; i < n; ++i)
            if (in(s, i))
                a.push_back(pool[i]);
        std::sort(a.begin(), a.end());
        out.insert(a);
    }
    return out;
}

/// Number of nontrivial antichains of pool (at most ~24 elements).
inline std::uint64_t antichain_count(const Universe& u, const std::vector<Id>& pool)
{
    const int n = static_cast<int>(pool.size());
    std::vector<Mask> comparable(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (lt(u, pool[i], pool[j]) || lt(u, pool[j], pool[i])))
                comparable[i] |= Mask{1} << j;
    std::uint64_t count = 0;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (__builtin_popcountll(s) < 2)
            continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = !in(s, i) || (comparable[i] & s) == 0;
        count += ok ? 1 : 0;
    }
    return count;
}

inline bool is_downset(const FinitePreorder& p, Mask s)
{
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (in(s, a) && p.leq(b, a) && !in(s, b))
                return false;
    return true;
}

inline std::vector<Mask> downsets(const FinitePreorder& p)
{
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << p.size()); ++s)
        if (oracle::is_downset(p, s))
            out.push_back(s);
    return out;
}

/// Continuous and sends open sets to open sets, straight from the topology.
inline bool is_open(const FinitePreorder& p, const FinitePreorder& q, const std::vector<int>& f)
{
    for (Mask v : downsets(q)) {
        Mask pre = 0;
        for (int x = 0; x < p.size(); ++x)
            if (in(v, f[x]))
                pre |= Mask{1} << x;
        if (!oracle::is_downset(p, pre))
            return false;
    }
    for (Mask u : downsets(p)) {
        Mask img = 0;
        for (int x = 0; x < p.size(); ++x)
            if (in(u, x))
                img |= Mask{1} << f[x];
        if (!oracle::is_downset(q, img))
            return false;
    }
    return true;
}

inline std::vector<std::vector<int>> all_functions(int n, int m)
{
    std::vector<std::vector<int>> out;
    if (m == 0)
        return n == 0 ? std::vector<std::vector<int>>{{}} : out;
    std::vector<int> f(n, 0);
    while (true) {
        out.push_back(f);
        int pos = 0;
        while (pos < n && ++f[pos] == m)
            f[pos++] = 0;
        if (pos == n)
            return out;
    }
}

inline std::vector<std::vector<int>> open_maps(const FinitePreorder& p, const FinitePreorder& q)
{
    std::vector<std::vector<int>> out;
    for (auto& f : all_functions(p.size(), q.size()))
        if (is_open(p, q, f))
            out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

/// Relation bits after relabelling by perm, minimised over all perms.
inline std::string canonical(const FinitePreorder& p)
{
    std::vector<int> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string s(static_cast<std::size_t>(p.size() * p.size()), '0');
        for (int a = 0; a < p.size(); ++a)
            for (int b = 0; b < p.size(); ++b)
                if (p.leq(a, b))
                    s[perm[a] * p.size() + perm[b]] = '1';
        if (best.empty() || s < best)
            best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Partial orders on n points counted up to isomorphism; candidates are all
/// off-diagonal relation patterns.
inline std::size_t poset_classes(int n)
{
    std::set<std::string> seen;
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                slots.emplace_back(a, b);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots.size()); ++code) {
        std::string bits(static_cast<std::size_t>(n * n), '0');
        for (int a = 0; a < n; ++a)
            bits[a * n + a] = '1';
        for (std::size_t i = 0; i < slots.size(); ++i)
            if ((code >> i) & 1u)
                bits[slots[i].first * n + slots[i].second] = '1';
        auto leq = [&](int a, int b) { return bits[a * n + b] == '1'; };
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (a != b && leq(a, b) && leq(b, a))
                    ok = false;
                for (int c = 0; c < n && ok; ++c)
                    if (leq(a, b) && leq(b, c) && !leq(a, c))
                        ok = false;
            }
        if (ok)
            seen.insert(canonical(FinitePreorder::from_relation_bits(n, bits)));
    }
    return seen.size();
}

/// Forth and back conditions.
inline bool is_pmorphism(const KripkeFrame& f, const KripkeFrame& g, const std::vector<int>& h)
{
    for (int x = 0; x < f.size(); ++x) {
        for (int y = 0; y < f.size(); ++y)
            if (f.related(x, y) && !g.related(h[x], h[y]))
                return false;
        for (int z = 0; z < g.size(); ++z) {
            if (!g.related(h[x], z))
                continue;
            bool found = false;
            for (int y = 0; y < f.size() && !found; ++y)
                found = f.related(x, y) && h[y] == z;
            if (!found)
                return false;
        }
    }
    return true;
}

/// Largest R-upset on which R is reflexive and transitive, by scanning every
/// subset and keeping the biggest qualifying one.
inline Mask coreflector(const KripkeFrame& f)
{
    const int n = f.size();
    Mask best = 0;
    for (Mask y = 0; y < (Mask{1} << n); ++y) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            if (!in(y, a))
                continue;
            ok = f.related(a, a);
            for (int b = 0; b < n && ok; ++b)
                if (f.related(a, b) && !in(y, b))
                    ok = false;
            for (int b = 0; b < n && ok; ++b)
                for (int c = 0; c < n && ok; ++c)
                    if (in(y, b) && in(y, c) && f.related(a, b) && f.related(b, c) && !f.related(a, c))
                        ok = false;
        }
        if (ok && __builtin_popcountll(y) > __builtin_popcountll(best))
            best = y;
    }
    return best;
}

} // namespace oracle
