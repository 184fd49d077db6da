#include "omorse/shelling.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"
#include "omorse/error.hpp"

namespace omorse {

std::vector<int> CanonicalOracle::order(int p, const std::vector<int>& prefix, int) {
    std::vector<int> out = prefix;
    std::sort(out.begin(), out.end());
    for (int c : p_.coatoms(p))
        if (!std::binary_search(prefix.begin(), prefix.end(), c) &&
            std::find(prefix.begin(), prefix.end(), c) == prefix.end())
            out.push_back(c);
    return out;
}

RcoFrame OracleSource::root() { return RcoFrame{-1, top_, "root"}; }

RcoFrame OracleSource::child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) {
    std::string key = std::to_string(coatom) + ":";
    for (int x : prefix) key += std::to_string(x) + ",";
    return RcoFrame{coatom, oracle_.order(coatom, prefix, parent.top), key};
}

std::vector<int> ShellingTypeOrdering::position_in_level() const {
    std::vector<int> pos(heights.h.size(), -1);
    for (const auto& lvl : levels)
        for (std::size_t i = 0; i < lvl.size(); ++i) pos[static_cast<std::size_t>(lvl[i])] = static_cast<int>(i);
    return pos;
}

std::vector<int> ShellingTypeOrdering::position_in_global() const {
    std::vector<int> pos(global.size(), -1);
    for (std::size_t i = 0; i < global.size(); ++i) pos[static_cast<std::size_t>(global[i])] = static_cast<int>(i);
    return pos;
}

namespace {

void check_oracle_output(const FinitePoset& p, int x, const std::vector<int>& prefix, const std::vector<int>& order) {
    std::vector<int> a = order, b = p.coatoms(x);
    std::sort(a.begin(), a.end());
    if (a != b) throw StructuralError("oracle order for '" + p.label(x) + "' is not a permutation of its coatoms");
    std::vector<int> head(order.begin(), order.begin() + static_cast<long>(prefix.size()));
    std::vector<int> want = prefix;
    std::sort(head.begin(), head.end());
    std::sort(want.begin(), want.end());
    if (head != want) throw StructuralError("oracle order for '" + p.label(x) + "' does not start with the required prefix");
}

}  // namespace

ShellingTypeOrdering build_shelling_type_ordering(const FinitePoset& p, const LinearOrder& top_order,
                                                  OrderingOracle& oracle, ShellingOptions options) {
    ShellingTypeOrdering s;
    s.heights = heights(p);
    s.bottom = p.bottom();
    const std::size_t n = p.size();
    const int L = s.heights.height;

    std::vector<int> maximal = p.maximal();
    if (n > 1 && maximal.size() == n) throw StructuralError("poset is an antichain");
    {
        std::vector<int> a = top_order, b = maximal;
        std::sort(a.begin(), a.end());
        if (a != b) throw StructuralError("top order must list every maximal element exactly once");
    }
    std::vector<int> top_pos(n, -1);
    for (std::size_t i = 0; i < top_order.size(); ++i) top_pos[static_cast<std::size_t>(top_order[i])] = static_cast<int>(i);

    // m_x: the last maximal element (in the top order) above x.
    std::vector<int> m_of(n, -1);
    for (int m : top_order) {
        const Bitset& below = p.down_closed(m);
        for (std::size_t x = below.find_first(); x != Bitset::npos; x = below.find_next(x)) m_of[x] = m;
    }

    s.levels.assign(static_cast<std::size_t>(L) + 1, {});
    s.pi.assign(n, -1);
    s.first_parent.assign(n, -1);
    s.prefix.assign(n, {});
    std::vector<int> owner(n, -1);
    for (int m : top_order)
        if (s.heights.level_of(m) == 0) s.levels[0].push_back(m);

    Bitset maximal_coat(n);  // coatoms of maximal elements expanded so far
    std::vector<char> placed(n, 0);
    for (int x : s.levels[0]) placed[static_cast<std::size_t>(x)] = 1;

    for (int i = 0; i < L; ++i) {
        const auto& cur = s.levels[static_cast<std::size_t>(i)];
        std::vector<int> cur_pos(n, -1);
        for (std::size_t k = 0; k < cur.size(); ++k) cur_pos[static_cast<std::size_t>(cur[k])] = static_cast<int>(k);
        LinearOrder next;
        for (std::size_t k = 0; k < cur.size(); ++k) {
            int x = cur[k];
            const auto& coat = p.coatoms(x);
            if (coat.empty()) continue;
            std::vector<int> prefix;
            int q = s.first_parent[static_cast<std::size_t>(x)];
            if (q < 0) {
                for (int c : coat)
                    if (maximal_coat.test(static_cast<std::size_t>(c))) prefix.push_back(c);
            } else {
                std::set<int> shared;
                for (int sib : p.coatoms(q))
                    if (sib != x && cur_pos[static_cast<std::size_t>(sib)] >= 0 &&
                        cur_pos[static_cast<std::size_t>(sib)] < static_cast<int>(k))
                        for (int c : p.coatoms(sib)) shared.insert(c);
                for (int c : coat)
                    if (shared.count(c)) prefix.push_back(c);
            }
            std::vector<int> ord = oracle.order(x, prefix, q);
            check_oracle_output(p, x, prefix, ord);
            s.prefix[static_cast<std::size_t>(x)] = prefix;
            s.coatom_orders[x] = ord;
            if (q < 0)
                for (int c : coat) maximal_coat.set(static_cast<std::size_t>(c));
            for (std::size_t t = prefix.size(); t < ord.size(); ++t) {
                int c = ord[t];
                if (placed[static_cast<std::size_t>(c)]) {
                    ++s.overlaps;
                    if (options.strict_partition)
                        throw StructuralError("blocks overlap at '" + p.label(c) + "' (new below '" + p.label(x) + "')");
                    continue;
                }
                placed[static_cast<std::size_t>(c)] = 1;
                owner[static_cast<std::size_t>(c)] = x;
                s.first_parent[static_cast<std::size_t>(c)] = x;
                next.push_back(c);
            }
        }
        // Every non-maximal element of the next level sits in some block.
        for (int y : s.heights.levels[static_cast<std::size_t>(i) + 1])
            if (!p.parents(y).empty() && !placed[static_cast<std::size_t>(y)])
                throw StructuralError("element '" + p.label(y) + "' was not placed by any block");
        // Maximal elements of this lower height, via m_x.
        for (int y : top_order) {
            if (s.heights.level_of(y) != i + 1) continue;
            std::size_t at = 0;
            for (std::size_t t = 0; t < next.size(); ++t) {
                int x = next[t];
                bool x_max = p.parents(x).empty();
                int key = x_max ? top_pos[static_cast<std::size_t>(x)] : top_pos[static_cast<std::size_t>(m_of[static_cast<std::size_t>(x)])];
                if (key < top_pos[static_cast<std::size_t>(y)]) at = t + 1;
            }
            next.insert(next.begin() + static_cast<long>(at), y);
            placed[static_cast<std::size_t>(y)] = 1;
        }
        s.levels[static_cast<std::size_t>(i) + 1] = std::move(next);
    }

    // pi(q): last coatom of q in the next level.
    std::vector<int> lvl_pos = s.position_in_level();
    for (std::size_t x = 0; x < n; ++x) {
        int best = -1;
        for (int c : p.coatoms(static_cast<int>(x)))
            if (best < 0 || lvl_pos[static_cast<std::size_t>(c)] > lvl_pos[static_cast<std::size_t>(best)]) best = c;
        s.pi[x] = best;
    }

    // Global order: depth-first through the "placed by" forest, roots in the
    // top order, a bottom element last. A maximal element of lower height is
    // treated as the next sibling of its predecessor in its level.
    std::vector<std::vector<int>> children(n);
    std::vector<int> roots;
    std::vector<int> holder(n, -1);  // whose child list holds x; -1 for the root list
    auto list_of = [&](int h) -> std::vector<int>& { return h >= 0 ? children[static_cast<std::size_t>(h)] : roots; };
    int last = -1;
    for (int lvl = 0; lvl <= L; ++lvl) {
        const auto& order = s.levels[static_cast<std::size_t>(lvl)];
        for (std::size_t t = 0; t < order.size(); ++t) {
            int x = order[t];
            if (s.bottom && x == *s.bottom && L > 0) {
                last = x;
                continue;
            }
            int o = owner[static_cast<std::size_t>(x)];
            if (o >= 0 || lvl == 0) {
                holder[static_cast<std::size_t>(x)] = o;
                list_of(o).push_back(x);
                continue;
            }
            // Lower maximal element: sibling right after its predecessor in the
            // level, else right before its successor.
            int anchor = t > 0 ? order[t - 1] : order.size() > 1 ? order[1] : -1;
            if (anchor < 0) {
                roots.push_back(x);
                continue;
            }
            int h = t > 0 ? holder[static_cast<std::size_t>(anchor)] : owner[static_cast<std::size_t>(anchor)];
            holder[static_cast<std::size_t>(x)] = h;
            auto& list = list_of(h);
            auto it = std::find(list.begin(), list.end(), anchor);
            if (t > 0) list.insert(it == list.end() ? list.end() : it + 1, x);
            else list.insert(it, x);
        }
    }
    std::function<void(int)> visit = [&](int x) {
        s.global.push_back(x);
        for (int c : children[static_cast<std::size_t>(x)]) visit(c);
    };
    for (int r : roots) visit(r);
    if (last >= 0) s.global.push_back(last);
    if (s.global.size() != n) throw StructuralError("global order does not cover every element");
    for (int x : s.global)
        if (p.parents(x).empty()) s.facet_order.push_back(x);
    return s;
}

Matching matching_from_ordering(const FinitePoset& p, const ShellingTypeOrdering& s, bool include_bottom) {
    Matching m(p.size());
    for (std::size_t i = 0; i + 1 < s.levels.size(); ++i)
        for (int x : s.levels[i]) {
            int y = s.pi[static_cast<std::size_t>(x)];
            if (y < 0 || m.matched(x) || m.matched(y)) continue;
            if (!include_bottom && s.bottom && y == *s.bottom) continue;
            m.add(x, y);
        }
    return m;
}

std::vector<int> homology_facets(const FinitePoset& p, const LinearOrder& facet_order) {
    std::vector<int> out;
    Bitset covered(p.size());
    for (std::size_t k = 0; k < facet_order.size(); ++k) {
        int m = facet_order[k];
        bool all = k > 0;
        for (int c : p.coatoms(m))
            if (!covered.test(static_cast<std::size_t>(c))) all = false;
        if (all) out.push_back(m);
        covered |= p.down_closed(m);
    }
    return out;
}

std::vector<CriticalCell> critical_cells(const FinitePoset& p, const Matching& m, const ShellingTypeOrdering* s,
                                         OrderingSource* rco) {
    check_matching(m, p);
    Heights h = heights(p);
    auto b = p.bottom();
    int shift = b && p.size() > 1 ? 1 : 0;
    std::vector<CriticalCell> out;
    for (int x : m.unmatched()) out.push_back({x, h.h[static_cast<std::size_t>(x)] - shift});
    if (!s || !b || !m.matched(*b) || !is_cw_poset(p)) return out;

    RcoResult r;
    if (rco) {
        r = verify_rco(p, *rco);
    } else {
        MapOrderingSource src(s->facet_order, s->coatom_orders);
        try {
            r = verify_rco(p, src);
        } catch (const StructuralError&) {
            r.ok = false;
        }
    }
    if (!r.ok) return out;
    std::vector<int> crit = m.unmatched(), hf = homology_facets(p, s->facet_order);
    std::sort(crit.begin(), crit.end());
    std::sort(hf.begin(), hf.end());
    if (crit != hf) {
        std::string w = "critical {";
        for (int x : crit) w += p.label(x) + " ";
        w += "} vs homology facets {";
        for (int x : hf) w += p.label(x) + " ";
        throw TheoremViolation("cw_ac", w + "}");
    }
    return out;
}

std::string ordering_json(const FinitePoset& p, const ShellingTypeOrdering& s) {
    nlohmann::json j;
    j["order"] = nlohmann::json::array();
    for (int x : s.global) j["order"].push_back(p.label(x));
    j["levels"] = nlohmann::json::array();
    for (const auto& lvl : s.levels) {
        nlohmann::json a = nlohmann::json::array();
        for (int x : lvl) a.push_back(p.label(x));
        j["levels"].push_back(a);
    }
    return j.dump(2);
}

}  // namespace omorse
