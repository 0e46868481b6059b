#include "finorder/hsets.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace finorder::hsets {

BasePoset::BasePoset(std::vector<std::string> labels,
                     const std::vector<std::pair<std::string, std::string>>& leq_pairs)
    : labels_(std::move(labels)), leq_(labels_.size() * labels_.size(), 0)
{
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels_[i] == labels_[j])
                throw std::invalid_argument("duplicate atom label: " + labels_[i]);
    for (std::size_t i = 0; i < n; ++i)
        leq_[i * n + i] = 1;
    for (const auto& [a, b] : leq_pairs) {
        auto ia = index_of(a), ib = index_of(b);
        if (!ia || !ib)
            throw std::invalid_argument("unknown atom in order pair: " + a + " <= " + b);
        leq_[*ia * n + *ib] = 1;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq_[k * n + j])
                        leq_[i * n + j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (leq_[i * n + j] && leq_[j * n + i])
                throw std::invalid_argument("base order is not antisymmetric: " + labels_[i] +
                                            " and " + labels_[j]);
}

std::optional<std::size_t> BasePoset::index_of(std::string_view label) const
{
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return i;
    return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> BasePoset::strict_pairs() const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (less(i, j))
                out.emplace_back(labels_[i], labels_[j]);
    return out;
}

Universe::Universe(BasePoset base) : base_(std::move(base))
{
    const std::size_t n = base_.size();
    nodes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Node a;
        a.is_atom = true;
        a.atom = i;
        for (std::size_t j = 0; j < n; ++j)
            if (base_.less(j, i))
                a.closure.push_back(static_cast<Id>(j));
        nodes_.push_back(std::move(a));
    }
}

const Universe::Node& Universe::node(Id x) const
{
    if (x >= nodes_.size())
        throw std::out_of_range("unknown element id " + std::to_string(x));
    return nodes_[x];
}

std::size_t Universe::atom_index(Id x) const
{
    const Node& n = node(x);
    if (!n.is_atom)
        throw std::invalid_argument("element " + std::to_string(x) + " is not an atom");
    return n.atom;
}

Id Universe::atom(std::string_view label) const
{
    auto i = base_.index_of(label);
    if (!i)
        throw std::invalid_argument("unknown atom label: " + std::string(label));
    return static_cast<Id>(*i);
}

std::vector<Id> Universe::canonical(std::vector<Id> children)
{
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    return children;
}

Id Universe::intern(std::vector<Id> children)
{
    children = canonical(std::move(children));
    for (Id c : children)
        if (c >= nodes_.size())
            throw std::invalid_argument("intern: unknown child id " + std::to_string(c));
    if (auto it = index_.find(children); it != index_.end())
        return it->second;

    std::vector<Id> closure;
    for (Id c : children) {
        std::vector<Id> merged;
        const auto& cc = nodes_[c].closure;
        merged.reserve(closure.size() + cc.size() + 1);
        std::set_union(closure.begin(), closure.end(), cc.begin(), cc.end(),
                       std::back_inserter(merged));
        auto pos = std::lower_bound(merged.begin(), merged.end(), c);
        if (pos == merged.end() || *pos != c)
            merged.insert(pos, c);
        closure = std::move(merged);
    }

    const Id id = static_cast<Id>(nodes_.size());
    Node n;
    n.children = children;
    n.closure = std::move(closure);
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(children), id);
    return id;
}

std::optional<Id> Universe::find(std::vector<Id> children) const
{
    children = canonical(std::move(children));
    if (auto it = index_.find(children); it != index_.end())
        return it->second;
    return std::nullopt;
}

bool Universe::lt(Id x, Id y) const
{
    node(x);
    const auto& cl = node(y).closure;
    return std::binary_search(cl.begin(), cl.end(), x);
}

bool Universe::lt_recursive(Id x, Id y) const
{
    const Node& ny = node(y);
    if (ny.is_atom) {
        const Node& nx = node(x);
        return nx.is_atom && base_.less(nx.atom, ny.atom);
    }
    for (Id c : ny.children)
        if (c == x || lt_recursive(x, c))
            return true;
    return false;
}

std::vector<Id> Universe::transitive_closure_uncached(Id x) const
{
    const Node& nx = node(x);
    std::vector<Id> out;
    if (nx.is_atom) {
        for (std::size_t j = 0; j < base_.size(); ++j)
            if (base_.less(j, nx.atom))
                out.push_back(static_cast<Id>(j));
        return out;
    }
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<Id> work(nx.children.begin(), nx.children.end());
    while (!work.empty()) {
        Id y = work.back();
        work.pop_back();
        if (seen[y])
            continue;
        seen[y] = 1;
        out.push_back(y);
        const Node& ny = nodes_[y];
        if (ny.is_atom) {
            for (std::size_t j = 0; j < base_.size(); ++j)
                if (base_.less(j, ny.atom))
                    work.push_back(static_cast<Id>(j));
        } else {
            work.insert(work.end(), ny.children.begin(), ny.children.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Universe::set_name(Id x, std::string name)
{
    node(x);
    names_[x] = std::move(name);
}

std::optional<std::string> Universe::name(Id x) const
{
    if (auto it = names_.find(x); it != names_.end())
        return it->second;
    return std::nullopt;
}

std::string Universe::format(Id x) const
{
    if (auto n = name(x))
        return *n;
    const Node& nx = node(x);
    if (nx.is_atom)
        return base_.label(nx.atom);
    std::string out = "{";
    for (std::size_t i = 0; i < nx.children.size(); ++i) {
        if (i)
            out += ',';
        out += format(nx.children[i]);
    }
    return out + "}";
}

std::string Universe::dump() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        os << i << " := ";
        if (n.is_atom) {
            os << "atom " << base_.label(n.atom);
        } else {
            os << "{";
            for (std::size_t k = 0; k < n.children.size(); ++k)
                os << (k ? ", " : " ") << n.children[k];
            os << " }";
        }
        os << '\n';
    }
    return os.str();
}

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& why)
{
    throw std::invalid_argument("universe dump line " + std::to_string(line) + ": " + why);
}

Id parse_id(std::string_view tok, std::size_t line)
{
    Id v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        bad_line(line, "bad id '" + std::string(tok) + "'");
    return v;
}

} // namespace

Universe Universe::load(std::string_view text, BasePoset base)
{
    Universe u(std::move(base));
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::size_t expected = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string id_tok, assign;
        ls >> id_tok >> assign;
        if (assign != ":=")
            bad_line(lineno, "expected ':='");
        const Id id = parse_id(id_tok, lineno);
        if (id != expected)
            bad_line(lineno, "ids must be consecutive from 0 in interning order");
        std::string kind;
        ls >> kind;
        if (kind == "atom") {
            std::string label;
            ls >> label;
            if (id >= u.base().size() || u.base().label(id) != label)
                bad_line(lineno, "atom '" + label + "' does not match the base order");
        } else if (kind == "{") {
            if (id < u.base().size())
                bad_line(lineno, "atoms must come first");
            std::vector<Id> children;
            std::string tok;
            bool closed = false;
            while (ls >> tok) {
                if (tok == "}") {
                    closed = true;
                    break;
                }
                if (!tok.empty() && tok.back() == ',')
                    tok.pop_back();
                const Id c = parse_id(tok, lineno);
                if (c >= id)
                    bad_line(lineno, "child " + std::to_string(c) + " does not precede its parent");
                children.push_back(c);
            }
            if (!closed)
                bad_line(lineno, "missing '}'");
            if (!std::is_sorted(children.begin(), children.end()) ||
                std::adjacent_find(children.begin(), children.end()) != children.end())
                bad_line(lineno, "children must be strictly increasing");
            if (u.intern(children) != id)
                bad_line(lineno, "duplicate set");
        } else {
            bad_line(lineno, "expected 'atom' or '{'");
        }
        ++expected;
    }
    if (expected < u.base().size())
        throw std::invalid_argument("universe dump is missing base atoms");
    return u;
}

std::vector<Id> transitive_closure(const Universe& u, Id x)
{
    auto cl = u.closure(x);
    return {cl.begin(), cl.end()};
}

bool is_antichain(const Universe& u, std::span<const Id> s)
{
    for (Id a : s)
        for (Id b : s)
            if (u.lt(a, b))
                return false;
    return true;
}

bool is_nontrivial_antichain(const Universe& u, std::span<const Id> s)
{
    return sorted_unique({s.begin(), s.end()}).size() >= 2 && is_antichain(u, s);
}

bool is_chain(const Universe& u, std::span<const Id> s)
{
    for (Id a : s)
        for (Id b : s)
            if (!u.leq(a, b) && !u.leq(b, a))
                return false;
    return true;
}

std::vector<Id> default_scope(const Universe& u, std::span<const Id> elements)
{
    std::vector<Id> out(elements.begin(), elements.end());
    for (Id x : elements) {
        auto cl = u.closure(x);
        out.insert(out.end(), cl.begin(), cl.end());
    }
    return sorted_unique(std::move(out));
}

bool is_convex(const Universe& u, std::span<const Id> m, std::span<const Id> scope)
{
    const auto ms = sorted_unique({m.begin(), m.end()});
    const auto ss = sorted_unique({scope.begin(), scope.end()});
    for (Id x : ms)
        if (!contains(ss, x))
            throw std::invalid_argument("is_convex: element " + std::to_string(x) +
                                        " is outside the scope");
    for (Id q : ss) {
        if (contains(ms, q))
            continue;
        bool above = false, below = false;
        for (Id p : ms) {
            above = above || u.lt(p, q);
            below = below || u.lt(q, p);
        }
        if (above && below)
            return false;
    }
    return true;
}

bool is_convex(const Universe& u, std::span<const Id> m)
{
    return is_convex(u, m, default_scope(u, m));
}

bool chain_hypothesis(const Universe& u, std::span<const Id> m)
{
    for (Id x : m) {
        std::vector<Id> below;
        for (Id y : m)
            if (u.leq(y, x))
                below.push_back(y);
        if (!is_chain(u, below))
            return false;
    }
    return true;
}

Id ordinal(Universe& u, int k)
{
    std::vector<Id> members;
    for (int i = 0; i < k; ++i)
        members.push_back(ordinal(u, i));
    const Id id = u.intern(std::move(members));
    u.set_name(id, std::to_string(k));
    return id;
}

FourPointBase four_point_base(BaseMode mode)
{
    if (mode == BaseMode::abstract) {
        BasePoset order({"m0", "m1", "m2", "m3"}, {{"m0", "m1"}, {"m0", "m2"}, {"m0", "m3"}});
        FourPointBase b{Universe(std::move(order)), {}, 0, 1, 2, 3, mode};
        b.base = {b.m0, b.m1, b.m2, b.m3};
        return b;
    }
    Universe u;
    const Id zero = ordinal(u, 0);
    const Id m0 = u.intern({u.intern({zero})});
    const Id m1 = u.intern({m0, ordinal(u, 1)});
    const Id m2 = u.intern({m0, ordinal(u, 2)});
    const Id m3 = u.intern({m0, ordinal(u, 3)});
    u.set_name(m0, "m0");
    u.set_name(m1, "m1");
    u.set_name(m2, "m2");
    u.set_name(m3, "m3");
    FourPointBase b{std::move(u), {}, m0, m1, m2, m3, mode};
    b.base = sorted_unique({m0, m1, m2, m3});
    return b;
}

TripleBase antichain3_base()
{
    TripleBase b{Universe(BasePoset({"m1", "m2", "m3"}, {})), {0, 1, 2}};
    return b;
}

std::vector<Id> sorted_unique(std::vector<Id> ids)
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool contains(std::span<const Id> sorted, Id x)
{
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

} // namespace finorder::hsets
