#include "finorder/order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace finorder {

FinitePreorder FinitePreorder::from_down_sets(std::vector<Mask> down_rows)
{
    const int n = static_cast<int>(down_rows.size());
    if (n > kMaxPoints)
        throw SizeLimitError("preorder has more than 64 points");
    const Mask all = full_mask(n);
    for (int i = 0; i < n; ++i) {
        if (!subset_of(down_rows[i], all))
            throw std::invalid_argument("relation mentions a point outside the carrier");
        if (!has(down_rows[i], i))
            throw std::invalid_argument("relation is not reflexive at point " + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for_each_bit(down_rows[i], [&](int j) {
            if (!subset_of(down_rows[j], down_rows[i]))
                throw std::invalid_argument("relation is not transitive through point " + std::to_string(j));
        });
    FinitePreorder p;
    p.down_ = std::move(down_rows);
    p.up_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for_each_bit(p.down_[i], [&](int j) { p.up_[j] |= bit(i); });
    return p;
}

FinitePreorder FinitePreorder::generated(int n, std::span<const std::pair<int, int>> leq_pairs)
{
    if (n < 0 || n > kMaxPoints)
        throw SizeLimitError("preorder size out of range");
    std::vector<Mask> down(n);
    for (int i = 0; i < n; ++i)
        down[i] = bit(i);
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw std::invalid_argument("order pair mentions a point outside the carrier");
        down[b] |= bit(a);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (has(down[i], k))
                down[i] |= down[k];
    return from_down_sets(std::move(down));
}

FinitePreorder FinitePreorder::from_relation_bits(int n, std::string_view bits)
{
    if (n < 0 || n > kMaxPoints)
        throw SizeLimitError("preorder size out of range");
    if (bits.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("relation string must have size*size characters");
    std::vector<Mask> down(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const char c = bits[static_cast<std::size_t>(i * n + j)];
            if (c == '1')
                down[j] |= bit(i);
            else if (c != '0')
                throw std::invalid_argument("relation string must contain only 0 and 1");
        }
    return from_down_sets(std::move(down));
}

FinitePreorder FinitePreorder::discrete(int n)
{
    return generated(n, {});
}

FinitePreorder FinitePreorder::chain(int n)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < n; ++i)
        pairs.emplace_back(i, i + 1);
    return generated(n, pairs);
}

bool FinitePreorder::is_poset() const
{
    for (int i = 0; i < size(); ++i)
        if ((down_[i] & up_[i]) != bit(i))
            return false;
    return true;
}

FinitePreorder FinitePreorder::opposite() const
{
    FinitePreorder p;
    p.down_ = up_;
    p.up_ = down_;
    p.labels_ = labels_;
    return p;
}

std::string FinitePreorder::relation_bits() const
{
    std::string out;
    out.reserve(static_cast<std::size_t>(size() * size()));
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            out += leq(i, j) ? '1' : '0';
    return out;
}

std::string FinitePreorder::label(int i) const
{
    if (static_cast<std::size_t>(i) < labels_.size())
        return labels_[i];
    return std::to_string(i);
}

FinitePreorder& FinitePreorder::with_labels(std::vector<std::string> labels)
{
    if (labels.size() != static_cast<std::size_t>(size()))
        throw std::invalid_argument("label count does not match preorder size");
    labels_ = std::move(labels);
    return *this;
}

Mask down_closure(const FinitePreorder& p, Mask s)
{
    Mask out = 0;
    for_each_bit(s, [&](int i) { out |= p.down(i); });
    return out;
}

Mask up_closure(const FinitePreorder& p, Mask s)
{
    Mask out = 0;
    for_each_bit(s, [&](int i) { out |= p.up(i); });
    return out;
}

bool is_downset(const FinitePreorder& p, Mask s)
{
    return down_closure(p, s) == s;
}

bool is_upset(const FinitePreorder& p, Mask s)
{
    return up_closure(p, s) == s;
}

std::vector<Mask> all_downsets(const FinitePreorder& p)
{
    const int n = p.size();
    if (n > kMaxDownsetPoints)
        throw SizeLimitError("all_downsets: more than 20 points");

    // Equivalence classes, ordered so that strictly smaller classes come first.
    std::vector<Mask> classes;
    for (int i = 0; i < n; ++i) {
        const Mask cls = p.down(i) & p.up(i);
        if (std::countr_zero(cls) == i)
            classes.push_back(cls);
    }
    std::stable_sort(classes.begin(), classes.end(), [&](Mask a, Mask b) {
        return popcount(p.down(std::countr_zero(a))) < popcount(p.down(std::countr_zero(b)));
    });

    std::vector<Mask> out;
    std::vector<std::pair<std::size_t, Mask>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [k, chosen] = stack.back();
        stack.pop_back();
        if (k == classes.size()) {
            out.push_back(chosen);
            continue;
        }
        const Mask cls = classes[k];
        stack.emplace_back(k + 1, chosen);
        const Mask below = p.down(std::countr_zero(cls)) & ~cls;
        if (subset_of(below, chosen))
            stack.emplace_back(k + 1, chosen | cls);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_wellfounded(const FinitePreorder& p)
{
    return p.is_poset();
}

std::vector<std::pair<int, int>> covers(const FinitePreorder& p)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            if (!p.less(a, b))
                continue;
            bool between = false;
            for (int c = 0; c < p.size() && !between; ++c)
                between = p.less(a, c) && p.less(c, b);
            if (!between)
                out.emplace_back(a, b);
        }
    return out;
}

namespace {

struct IsoSearch {
    const FinitePreorder& p;
    const FinitePreorder& q;
    std::vector<int> image;
    Mask used = 0;

    bool compatible(int i, int j) const
    {
        return popcount(p.down(i)) == popcount(q.down(j)) && popcount(p.up(i)) == popcount(q.up(j));
    }

    bool run(int i)
    {
        if (i == p.size())
            return true;
        for (int j = 0; j < q.size(); ++j) {
            if (has(used, j) || !compatible(i, j))
                continue;
            bool ok = p.leq(i, i) == q.leq(j, j);
            for (int k = 0; k < i && ok; ++k)
                ok = p.leq(k, i) == q.leq(image[k], j) && p.leq(i, k) == q.leq(j, image[k]);
            if (!ok)
                continue;
            image[i] = j;
            used |= bit(j);
            if (run(i + 1))
                return true;
            used &= ~bit(j);
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> poset_iso(const FinitePreorder& p, const FinitePreorder& q)
{
    if (p.size() > kMaxIsoPoints || q.size() > kMaxIsoPoints)
        throw SizeLimitError("poset_iso: more than 12 points");
    if (p.size() != q.size())
        return std::nullopt;
    IsoSearch search{p, q, std::vector<int>(p.size(), -1)};
    if (search.run(0))
        return search.image;
    return std::nullopt;
}

FinitePreorder permuted(const FinitePreorder& p, std::span<const int> perm)
{
    const int n = p.size();
    std::vector<Mask> down(n, 0);
    for (int i = 0; i < n; ++i)
        for_each_bit(p.down(i), [&](int j) { down[perm[i]] |= bit(perm[j]); });
    return FinitePreorder::from_down_sets(std::move(down));
}

namespace {

std::vector<FinitePreorder> iso_classes(std::vector<FinitePreorder> all)
{
    std::vector<FinitePreorder> reps;
    for (auto& cand : all) {
        bool seen = false;
        for (const auto& r : reps)
            if (poset_iso(cand, r)) {
                seen = true;
                break;
            }
        if (!seen)
            reps.push_back(std::move(cand));
    }
    return reps;
}

} // namespace

std::vector<FinitePreorder> enumerate_posets(int n)
{
    if (n < 0 || n > 5)
        throw SizeLimitError("enumerate_posets: exhaustive only for n <= 5");
    // Every finite poset has a linear extension, so strict pairs i < j with
    // i < j as integers reach every isomorphism class.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            slots.emplace_back(i, j);
    std::vector<FinitePreorder> all;
    for (std::uint32_t code = 0; code < (1u << slots.size()); ++code) {
        std::vector<Mask> down(n);
        for (int i = 0; i < n; ++i)
            down[i] = bit(i);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((code >> s) & 1u)
                down[slots[s].second] |= bit(slots[s].first);
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for_each_bit(down[i], [&](int j) { transitive = transitive && subset_of(down[j], down[i]); });
        if (transitive)
            all.push_back(FinitePreorder::from_down_sets(std::move(down)));
    }
    return iso_classes(std::move(all));
}

std::vector<FinitePreorder> enumerate_preorders(int n, bool up_to_iso)
{
    if (n < 0 || n > 5)
        throw SizeLimitError("enumerate_preorders: exhaustive only for n <= 5");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                slots.emplace_back(i, j);
    std::vector<FinitePreorder> all;
    for (std::uint32_t code = 0; code < (1u << slots.size()); ++code) {
        std::vector<Mask> down(n);
        for (int i = 0; i < n; ++i)
            down[i] = bit(i);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((code >> s) & 1u)
                down[slots[s].second] |= bit(slots[s].first);
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for_each_bit(down[i], [&](int j) { transitive = transitive && subset_of(down[j], down[i]); });
        if (transitive)
            all.push_back(FinitePreorder::from_down_sets(std::move(down)));
    }
    return up_to_iso ? iso_classes(std::move(all)) : all;
}

FinitePreorder random_poset(int n, std::mt19937_64& rng)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() & 1u)
                pairs.emplace_back(perm[i], perm[j]);
    return FinitePreorder::generated(n, pairs);
}

FinitePreorder random_preorder(int n, std::mt19937_64& rng)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng() % 3 == 0)
                pairs.emplace_back(i, j);
    return FinitePreorder::generated(n, pairs);
}

FinitePreorder sierpinski()
{
    return FinitePreorder::chain(2);
}

FinitePreorder singleton()
{
    return FinitePreorder::discrete(1);
}

FinitePreorder product(const FinitePreorder& p, const FinitePreorder& q)
{
    const int n = p.size() * q.size();
    if (n > kMaxPoints)
        throw SizeLimitError("product has more than 64 points");
    std::vector<Mask> down(n, 0);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
            for (int c = 0; c < p.size(); ++c)
                for (int d = 0; d < q.size(); ++d)
                    if (p.leq(c, a) && q.leq(d, b))
                        down[a * q.size() + b] |= bit(c * q.size() + d);
    return FinitePreorder::from_down_sets(std::move(down));
}

int StagePoset::index_of(hsets::Id id) const
{
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id)
        throw std::invalid_argument("element " + std::to_string(id) + " is not in this stage");
    return static_cast<int>(it - ids.begin());
}

Mask StagePoset::mask_of(std::span<const hsets::Id> s) const
{
    Mask m = 0;
    for (auto id : s)
        m |= bit(index_of(id));
    return m;
}

StagePoset materialize(const hsets::Universe& u, const hierarchy::Hierarchy& h, std::size_t stage)
{
    const auto& lvl = h.level(stage);
    if (lvl.size() > static_cast<std::size_t>(kMaxPoints))
        throw SizeLimitError("materialize: stage " + std::to_string(stage) + " has " +
                             std::to_string(lvl.size()) + " elements, more than 64");
    const int n = static_cast<int>(lvl.size());
    std::vector<Mask> down(n, 0);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (u.leq(lvl[j], lvl[i]))
                down[i] |= bit(j);
        labels.push_back(u.format(lvl[i]));
    }
    StagePoset s{FinitePreorder::from_down_sets(std::move(down)), lvl};
    s.poset.with_labels(std::move(labels));
    return s;
}

std::string to_dot(const FinitePreorder& p, const std::string& name)
{
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=BT;\n  edge [arrowhead=none];\n";
    for (int i = 0; i < p.size(); ++i)
        os << "  p" << i << " [label=\"" << p.label(i) << "\"];\n";
    for (auto [a, b] : covers(p))
        os << "  p" << a << " -> p" << b << ";\n";
    // Points identified by the preorder are joined both ways.
    for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
            if (p.leq(a, b) && p.leq(b, a))
                os << "  p" << a << " -> p" << b << " [dir=both, style=dashed];\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const FinitePreorder& p)
{
    nlohmann::json j;
    j["size"] = p.size();
    j["relation"] = p.relation_bits();
    if (!p.labels().empty())
        j["labels"] = p.labels();
    return j;
}

FinitePreorder preorder_from_json(const nlohmann::json& j)
{
    auto p = FinitePreorder::from_relation_bits(j.at("size").get<int>(), j.at("relation").get<std::string>());
    if (j.contains("labels"))
        p.with_labels(j.at("labels").get<std::vector<std::string>>());
    return p;
}

} // namespace finorder
