#include "omorse/poset.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"
#include "omorse/error.hpp"

namespace omorse {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Index order in which every element comes after everything below it.
std::vector<int> bottom_up_order(const std::vector<std::vector<int>>& down) {
    const std::size_t n = down.size();
    std::vector<int> pending(n, 0), order;
    std::vector<std::vector<int>> up(n);
    for (std::size_t p = 0; p < n; ++p) {
        pending[p] = static_cast<int>(down[p].size());
        for (int c : down[p]) up[static_cast<std::size_t>(c)].push_back(static_cast<int>(p));
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (std::size_t p = 0; p < n; ++p)
        if (pending[p] == 0) ready.push(static_cast<int>(p));
    while (!ready.empty()) {
        int p = ready.top();
        ready.pop();
        order.push_back(p);
        for (int u : up[static_cast<std::size_t>(p)])
            if (--pending[static_cast<std::size_t>(u)] == 0) ready.push(u);
    }
    return order;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<std::pair<int, int>> covers)
    : labels_(std::move(labels)), down_(labels_.size()), up_(labels_.size()) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
            throw StructuralError("duplicate poset label '" + labels_[i] + "'");
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
    const int n = static_cast<int>(labels_.size());
    for (auto [u, l] : covers) {
        if (u < 0 || l < 0 || u >= n || l >= n) throw StructuralError("cover index out of range");
        if (u == l) throw StructuralError("element '" + labels_[u] + "' covers itself");
        down_[u].push_back(l);
        up_[l].push_back(u);
    }
    for (auto& v : down_) std::sort(v.begin(), v.end());
    for (auto& v : up_) std::sort(v.begin(), v.end());
    if (bottom_up_order(down_).size() != labels_.size()) throw StructuralError("cover relation contains a cycle");
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> labels, const std::function<bool(int, int)>& less) {
    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lt[i][j] = i != j && less(i, j);
    std::vector<std::pair<int, int>> covers;
    for (int lo = 0; lo < n; ++lo)
        for (int hi = 0; hi < n; ++hi) {
            if (!lt[lo][hi]) continue;
            bool direct = true;
            for (int k = 0; k < n && direct; ++k)
                if (lt[lo][k] && lt[k][hi]) direct = false;
            if (direct) covers.emplace_back(hi, lo);
        }
    return FinitePoset(std::move(labels), std::move(covers));
}

FinitePoset FinitePoset::parse(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> idx;
    std::vector<std::pair<int, int>> covers;
    auto intern = [&](const std::string& s) {
        if (s.empty()) throw InputError("empty poset label");
        auto [it, fresh] = idx.emplace(s, static_cast<int>(labels.size()));
        if (fresh) labels.push_back(s);
        return it->second;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto gt = line.find('>');
        if (gt == std::string::npos) {
            intern(line);
            continue;
        }
        std::string a = trim(line.substr(0, gt)), b = trim(line.substr(gt + 1));
        if (a.empty() || b.empty() || b.find('>') != std::string::npos)
            throw InputError("poset line " + std::to_string(lineno) + ": expected 'p > q'");
        int u = intern(a), l = intern(b);
        covers.emplace_back(u, l);
    }
    FinitePoset p(std::move(labels), std::move(covers));
    p.validate();
    return p;
}

FinitePoset FinitePoset::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open poset file '" + path + "'");
    return parse(in);
}

int FinitePoset::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown poset element '" + label + "'");
    return it->second;
}

std::optional<int> FinitePoset::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool FinitePoset::covers(int upper, int lower) const {
    const auto& d = coatoms(upper);
    return std::binary_search(d.begin(), d.end(), lower);
}

std::vector<std::pair<int, int>> FinitePoset::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t p = 0; p < size(); ++p)
        for (int c : down_[p]) out.emplace_back(static_cast<int>(p), c);
    return out;
}

std::vector<int> FinitePoset::maximal() const {
    std::vector<int> out;
    for (std::size_t p = 0; p < size(); ++p)
        if (up_[p].empty()) out.push_back(static_cast<int>(p));
    return out;
}

std::vector<int> FinitePoset::minimal() const {
    std::vector<int> out;
    for (std::size_t p = 0; p < size(); ++p)
        if (down_[p].empty()) out.push_back(static_cast<int>(p));
    return out;
}

std::optional<int> FinitePoset::bottom() const {
    auto m = minimal();
    if (m.size() == 1) return m[0];
    return std::nullopt;
}

void FinitePoset::ensure_reach() const {
    if (reach_) return;
    auto reach = std::make_shared<std::vector<Bitset>>(size(), Bitset(size()));
    for (int p : bottom_up_order(down_)) {
        auto& r = (*reach)[static_cast<std::size_t>(p)];
        r.set(static_cast<std::size_t>(p));
        for (int c : down_[static_cast<std::size_t>(p)]) r |= (*reach)[static_cast<std::size_t>(c)];
    }
    reach_ = std::move(reach);
}

const Bitset& FinitePoset::down_closed(int p) const {
    ensure_reach();
    return (*reach_)[static_cast<std::size_t>(p)];
}

bool FinitePoset::less(int p, int q) const { return p != q && down_closed(q).test(static_cast<std::size_t>(p)); }

void FinitePoset::validate() const {
    for (std::size_t p = 0; p < size(); ++p)
        for (int c : down_[p])
            for (int other : down_[p])
                if (other != c && less(c, other))
                    throw StructuralError("cover " + labels_[p] + " > " + labels_[c] + " is implied by " + labels_[p] +
                                          " > " + labels_[other] + " > ... > " + labels_[c]);
}

FinitePoset FinitePoset::opposite() const {
    std::vector<std::pair<int, int>> covers;
    for (auto [u, l] : cover_pairs()) covers.emplace_back(l, u);
    return FinitePoset(labels_, std::move(covers));
}

FinitePoset FinitePoset::induced(const std::vector<int>& keep) const {
    std::vector<std::string> labels;
    for (int k : keep) labels.push_back(label(k));
    return from_relation(std::move(labels), [&](int i, int j) { return less(keep[i], keep[j]); });
}

Heights heights(const FinitePoset& p) {
    Heights out;
    const std::size_t n = p.size();
    std::vector<int> longest(n, 0), shortest(n, 0);
    std::vector<std::vector<int>> down(n);
    for (std::size_t i = 0; i < n; ++i) down[i] = p.coatoms(static_cast<int>(i));
    for (int x : bottom_up_order(down)) {
        const auto& c = p.coatoms(x);
        if (c.empty()) continue;
        int lo = 1 << 30, hi = 0;
        for (int y : c) {
            lo = std::min(lo, shortest[static_cast<std::size_t>(y)] + 1);
            hi = std::max(hi, longest[static_cast<std::size_t>(y)] + 1);
        }
        if (lo != hi)
            throw StructuralError("not locally ranked: maximal chains below '" + p.label(x) + "' have lengths " +
                                  std::to_string(lo) + " and " + std::to_string(hi));
        longest[static_cast<std::size_t>(x)] = shortest[static_cast<std::size_t>(x)] = hi;
    }
    out.h = longest;
    for (int h : out.h) out.height = std::max(out.height, h);
    out.levels.assign(static_cast<std::size_t>(out.height) + 1, {});
    for (std::size_t i = 0; i < n; ++i) out.levels[static_cast<std::size_t>(out.height - out.h[i])].push_back(static_cast<int>(i));
    return out;
}

bool is_locally_ranked(const FinitePoset& p) {
    try {
        heights(p);
        return true;
    } catch (const StructuralError&) {
        return false;
    }
}

void Matching::add(int upper, int lower) {
    if (upper == lower) throw StructuralError("matched an element with itself");
    if (matched(upper) || matched(lower)) throw StructuralError("element matched twice");
    mate_[static_cast<std::size_t>(upper)] = lower;
    mate_[static_cast<std::size_t>(lower)] = upper;
    pairs_.emplace_back(upper, lower);
}

std::vector<int> Matching::unmatched() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < mate_.size(); ++i)
        if (mate_[i] < 0) out.push_back(static_cast<int>(i));
    return out;
}

void check_matching(const Matching& m, const FinitePoset& p) {
    if (m.universe() != p.size()) throw StructuralError("matching and poset sizes differ");
    for (auto [u, l] : m.pairs())
        if (!p.covers(u, l)) throw StructuralError("matched pair " + p.label(u) + " > " + p.label(l) + " is not a cover");
}

AcyclicityResult is_acyclic(const Matching& m, const FinitePoset& p) {
    check_matching(m, p);
    const std::size_t n = p.size();
    // Cover edges point down; matched edges are reversed.
    std::vector<std::vector<int>> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (int c : p.coatoms(static_cast<int>(x)))
            if (m.mate(static_cast<int>(x)) != c) out[x].push_back(c);
        for (int u : p.parents(static_cast<int>(x)))
            if (m.mate(static_cast<int>(x)) == u) out[x].push_back(u);
        std::sort(out[x].begin(), out[x].end());
    }
    std::vector<char> color(n, 0);
    std::vector<int> parent(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
        color[s] = 1;
        while (!stack.empty()) {
            auto& [x, k] = stack.back();
            if (k == out[static_cast<std::size_t>(x)].size()) {
                color[static_cast<std::size_t>(x)] = 2;
                stack.pop_back();
                continue;
            }
            int y = out[static_cast<std::size_t>(x)][k++];
            if (color[static_cast<std::size_t>(y)] == 0) {
                color[static_cast<std::size_t>(y)] = 1;
                parent[static_cast<std::size_t>(y)] = x;
                stack.emplace_back(y, 0);
            } else if (color[static_cast<std::size_t>(y)] == 1) {
                AcyclicityResult r;
                r.acyclic = false;
                for (int z = x; z != y; z = parent[static_cast<std::size_t>(z)]) r.cycle.push_back(z);
                r.cycle.push_back(y);
                std::reverse(r.cycle.begin(), r.cycle.end());
                // Start the witness at the lower end of a matched edge.
                for (std::size_t i = 0; i < r.cycle.size(); ++i) {
                    int a = r.cycle[i], b = r.cycle[(i + 1) % r.cycle.size()];
                    if (m.mate(a) == b && p.covers(b, a)) {
                        std::rotate(r.cycle.begin(), r.cycle.begin() + static_cast<long>(i), r.cycle.end());
                        break;
                    }
                }
                return r;
            }
        }
    }
    return {};
}

LinearOrder adjacent_linear_extension(const Matching& m, const FinitePoset& p) {
    check_matching(m, p);
    const std::size_t n = p.size();
    // Node representative: the lower element of a matched pair, else itself.
    std::vector<int> rep(n);
    for (std::size_t x = 0; x < n; ++x) {
        int mate = m.mate(static_cast<int>(x));
        rep[x] = (mate >= 0 && p.covers(mate, static_cast<int>(x))) || mate < 0 ? static_cast<int>(x) : mate;
    }
    std::vector<std::set<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [u, l] : p.cover_pairs()) {
        int a = rep[static_cast<std::size_t>(l)], b = rep[static_cast<std::size_t>(u)];
        if (a != b && succ[static_cast<std::size_t>(a)].insert(b).second) ++indeg[static_cast<std::size_t>(b)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (std::size_t x = 0; x < n; ++x)
        if (rep[x] == static_cast<int>(x) && indeg[x] == 0) ready.push(static_cast<int>(x));
    LinearOrder order;
    while (!ready.empty()) {
        int a = ready.top();
        ready.pop();
        order.push_back(a);
        if (m.mate(a) >= 0) order.push_back(m.mate(a));
        for (int b : succ[static_cast<std::size_t>(a)])
            if (--indeg[static_cast<std::size_t>(b)] == 0) ready.push(b);
    }
    if (order.size() != n) return {};
    return order;
}

bool is_linear_extension(const FinitePoset& p, const LinearOrder& order) {
    if (order.size() != p.size()) return false;
    std::vector<int> pos(p.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int x = order[i];
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || pos[static_cast<std::size_t>(x)] >= 0) return false;
        pos[static_cast<std::size_t>(x)] = static_cast<int>(i);
    }
    for (auto [u, l] : p.cover_pairs())
        if (pos[static_cast<std::size_t>(l)] > pos[static_cast<std::size_t>(u)]) return false;
    return true;
}

std::vector<LinearOrder> linear_extensions(const FinitePoset& p, std::size_t limit) {
    std::vector<LinearOrder> out;
    const std::size_t n = p.size();
    std::vector<int> pending(n);
    for (std::size_t x = 0; x < n; ++x) pending[x] = static_cast<int>(p.coatoms(static_cast<int>(x)).size());
    LinearOrder cur;
    std::vector<char> used(n, 0);
    std::function<void()> rec = [&]() {
        if (out.size() >= limit) return;
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (used[x] || pending[x] != 0) continue;
            used[x] = 1;
            cur.push_back(static_cast<int>(x));
            for (int u : p.parents(static_cast<int>(x))) --pending[static_cast<std::size_t>(u)];
            rec();
            for (int u : p.parents(static_cast<int>(x))) ++pending[static_cast<std::size_t>(u)];
            cur.pop_back();
            used[x] = 0;
        }
    };
    rec();
    return out;
}

LinearOrder random_linear_extension(const FinitePoset& p, std::mt19937_64& rng) {
    const std::size_t n = p.size();
    std::vector<int> pending(n), ready;
    for (std::size_t x = 0; x < n; ++x) {
        pending[x] = static_cast<int>(p.coatoms(static_cast<int>(x)).size());
        if (pending[x] == 0) ready.push_back(static_cast<int>(x));
    }
    LinearOrder order;
    while (!ready.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
        std::size_t i = pick(rng);
        int x = ready[i];
        ready.erase(ready.begin() + static_cast<long>(i));
        order.push_back(x);
        for (int u : p.parents(x))
            if (--pending[static_cast<std::size_t>(u)] == 0) ready.push_back(u);
        std::sort(ready.begin(), ready.end());
    }
    return order;
}

RcoFrame MapOrderingSource::root() { return RcoFrame{-1, top_, "root"}; }

RcoFrame MapOrderingSource::child(const RcoFrame&, int coatom, const std::vector<int>&) {
    auto it = orders_.find(coatom);
    if (it == orders_.end()) throw StructuralError("no coatom ordering supplied for element " + std::to_string(coatom));
    return RcoFrame{coatom, it->second, std::to_string(coatom)};
}

namespace {

struct RcoChecker {
    const FinitePoset& p;
    OrderingSource& source;
    int bottom;
    std::set<std::string> done;
    std::vector<int> chain;

    std::vector<int> coat_of(int top) const { return top < 0 ? p.maximal() : p.coatoms(top); }

    RcoResult fail(int condition, std::vector<int> witness, std::string message) const {
        RcoResult r;
        r.ok = false;
        r.condition = condition;
        r.chain = chain;
        r.witness = std::move(witness);
        r.message = std::move(message);
        return r;
    }

    std::string name(int x) const { return x < 0 ? std::string("1^") : p.label(x); }

    RcoResult check(const RcoFrame& frame) {
        if (!done.insert(frame.key).second) return {};
        std::vector<int> coat = coat_of(frame.top);
        std::vector<int> sorted = frame.order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != coat)
            throw StructuralError("ordering for [0, " + name(frame.top) + "] is not a permutation of its coatoms");
        if (coat.size() == 1 && coat[0] == bottom) return {};
        chain.push_back(frame.top);
        const std::size_t n = p.size();
        const auto& ord = frame.order;

        // Condition (2).
        Bitset earlier_strict(n);
        for (std::size_t k = 0; k < ord.size(); ++k) {
            int q = ord[k];
            Bitset q_strict = p.down_closed(q);
            q_strict.reset(static_cast<std::size_t>(q));
            Bitset common = q_strict & earlier_strict;
            if (common.any()) {
                Bitset reachable(n);
                for (int z : p.coatoms(q))
                    if (earlier_strict.test(static_cast<std::size_t>(z))) reachable |= p.down_closed(z);
                Bitset bad = common - reachable;
                if (bad.any()) {
                    int y = static_cast<int>(bad.find_first());
                    int witness_p = -1;
                    for (std::size_t j = 0; j < k && witness_p < 0; ++j)
                        if (p.less(y, ord[j])) witness_p = ord[j];
                    chain.pop_back();
                    auto r = fail(2, {witness_p, q, y},
                                  "condition (2) fails in [0, " + name(frame.top) + "]: " + name(witness_p) + " before " +
                                      name(q) + ", both above " + name(y));
                    return r;
                }
            }
            Bitset add = p.down_closed(q);
            add.reset(static_cast<std::size_t>(q));
            earlier_strict |= add;
        }

        // Condition (1), recursively.
        Bitset earlier_coat(n);
        for (int c : ord) {
            if (c == bottom) continue;
            std::vector<int> prefix;
            for (int x : p.coatoms(c))
                if (earlier_coat.test(static_cast<std::size_t>(x))) prefix.push_back(x);
            RcoFrame sub = source.child(frame, c, prefix);
            if (sub.top != c) throw StructuralError("ordering source returned a frame for the wrong element");
            std::vector<int> head(sub.order.begin(), sub.order.begin() + static_cast<long>(std::min(prefix.size(), sub.order.size())));
            std::sort(head.begin(), head.end());
            if (head != prefix) {
                chain.pop_back();
                return fail(1, {c}, "condition (1) fails: coatoms of [0, " + name(c) +
                                        "] shared with earlier siblings are not listed first");
            }
            RcoResult r = check(sub);
            if (!r.ok) {
                chain.pop_back();
                return r;
            }
            for (int x : p.coatoms(c)) earlier_coat.set(static_cast<std::size_t>(x));
        }
        chain.pop_back();
        return {};
    }
};

}  // namespace

RcoResult verify_rco(const FinitePoset& p, OrderingSource& source) {
    auto b = p.bottom();
    if (!b) throw StructuralError("recursive coatom orderings need a unique minimum");
    RcoChecker checker{p, source, *b, {}, {}};
    return checker.check(source.root());
}

bool is_cw_poset(const FinitePoset& p) {
    if (!is_locally_ranked(p)) return false;
    auto b = p.bottom();
    const std::size_t n = p.size();
    for (std::size_t yi = 0; yi < n; ++yi) {
        int y = static_cast<int>(yi);
        const auto& cy = p.coatoms(y);
        std::set<int> bottoms;
        for (int c : cy)
            for (int x : p.coatoms(c)) bottoms.insert(x);
        for (int x : bottoms) {
            int middle = 0;
            for (int c : cy)
                if (p.covers(c, x)) ++middle;
            if (middle != 2) return false;
        }
        // Intervals [virtual 0, y] for y of rank one above the virtual bottom.
        if (!b && !cy.empty()) {
            bool above_minimal_only = std::all_of(cy.begin(), cy.end(), [&](int c) { return p.coatoms(c).empty(); });
            if (above_minimal_only && cy.size() != 2) return false;
        }
    }
    return true;
}

std::string matching_json(const Matching& m, const FinitePoset& p) {
    nlohmann::json j;
    j["pairs"] = nlohmann::json::array();
    for (auto [u, l] : m.pairs()) j["pairs"].push_back({p.label(u), p.label(l)});
    j["critical"] = nlohmann::json::array();
    for (int c : m.unmatched()) j["critical"].push_back(p.label(c));
    return j.dump(2);
}

}  // namespace omorse
