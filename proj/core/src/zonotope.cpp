#include "omorse/zonotope.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "omorse/error.hpp"

namespace omorse {

namespace {

void check_ordering(const std::vector<int>& ordering, std::size_t n) {
    std::vector<int> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    if (sorted != id) throw DomainError("hyperplane ordering is not a permutation of 0.." + std::to_string(n - 1));
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x) + ",";
    return s;
}

}  // namespace

int TopePoset::index_of(const SignVector& t) const {
    auto it = std::lower_bound(topes.begin(), topes.end(), t);
    return it != topes.end() && *it == t ? static_cast<int>(it - topes.begin()) : -1;
}

TopePoset tope_poset(const OrientedMatroid& m, const SignVector& base) {
    if (!m.is_tope(base)) throw DomainError("base " + base.str() + " is not a tope");
    TopePoset tp;
    tp.base = base;
    tp.topes = m.topes();
    std::sort(tp.topes.begin(), tp.topes.end());
    std::vector<ElementSet> sep;
    std::vector<std::string> labels;
    for (const auto& t : tp.topes) {
        sep.push_back(separation_set(base, t));
        tp.rank.push_back(popcount(sep.back()));
        labels.push_back(t.str());
    }
    if (m.is_simple()) {
        // Covers of a simple tope poset are single flips.
        std::vector<std::pair<int, int>> covers;
        for (std::size_t i = 0; i < sep.size(); ++i)
            for (std::size_t j = 0; j < sep.size(); ++j)
                if (tp.rank[j] == tp.rank[i] + 1 && is_subset(sep[i], sep[j]))
                    covers.emplace_back(static_cast<int>(j), static_cast<int>(i));
        tp.poset = FinitePoset(std::move(labels), std::move(covers));
    } else {
        tp.poset = FinitePoset::from_relation(std::move(labels), [&](int a, int b) {
            return a != b && is_subset(sep[static_cast<std::size_t>(a)], sep[static_cast<std::size_t>(b)]);
        });
    }
    return tp;
}

std::vector<int> identity_ordering(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<int> sigma(const SignVector& c, const SignVector& base, const std::vector<int>& ordering) {
    std::vector<int> s;
    s.reserve(ordering.size());
    for (int e : ordering) s.push_back(c[static_cast<std::size_t>(e)] != base[static_cast<std::size_t>(e)] ? 1 : 0);
    return s;
}

TopeOrder lex_extension(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering) {
    if (!m.is_tope(base)) throw DomainError("base " + base.str() + " is not a tope");
    check_ordering(ordering, m.ground_size());
    TopeOrder out = m.topes();
    std::vector<std::pair<std::vector<int>, SignVector>> keyed;
    for (const auto& t : out) keyed.emplace_back(sigma(t, base, ordering), t);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = keyed[i].second;
    return out;
}

bool is_linear_extension(const TopePoset& tp, const TopeOrder& order) {
    if (order.size() != tp.topes.size()) return false;
    LinearOrder idx;
    for (const auto& t : order) {
        int i = tp.index_of(t);
        if (i < 0) return false;
        idx.push_back(i);
    }
    return is_linear_extension(tp.poset, idx);
}

std::vector<TopeOrder> all_linear_extensions(const TopePoset& tp, std::size_t limit) {
    std::vector<TopeOrder> out;
    for (const auto& ext : linear_extensions(tp.poset, limit)) {
        TopeOrder o;
        for (int i : ext) o.push_back(tp.topes[static_cast<std::size_t>(i)]);
        out.push_back(std::move(o));
    }
    return out;
}

TopeOrder random_linear_extension(const TopePoset& tp, std::mt19937_64& rng) {
    TopeOrder o;
    for (int i : random_linear_extension(tp.poset, rng)) o.push_back(tp.topes[static_cast<std::size_t>(i)]);
    return o;
}

TopeOrder parse_extension(std::istream& in, const TopePoset& tp) {
    TopeOrder out;
    std::set<SignVector> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        SignVector t = SignVector::parse(line);
        if (t.size() != tp.base.size())
            throw DimensionError("extension line " + std::to_string(lineno) + ": expected length " +
                                 std::to_string(tp.base.size()));
        if (tp.index_of(t) < 0) throw DomainError("extension line " + std::to_string(lineno) + ": " + line + " is not a tope");
        if (!seen.insert(t).second) throw DomainError("extension line " + std::to_string(lineno) + ": duplicate tope " + line);
        out.push_back(t);
    }
    if (out.size() != tp.topes.size())
        throw DomainError("extension lists " + std::to_string(out.size()) + " of " + std::to_string(tp.topes.size()) +
                          " topes");
    if (!is_linear_extension(tp, out)) throw DomainError("extension is not a linear extension of the tope poset");
    return out;
}

CutCheck cut_property_check(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering) {
    check_ordering(ordering, a.size());
    if (base.size() != a.size() || !base.full_support() || !feasible(a, base))
        throw DomainError("base " + base.str() + " is not a chamber");
    ElementSet constrained = 0;
    SignVector pattern = base;
    for (std::size_t j = 0; j < ordering.size(); ++j) {
        auto e = static_cast<std::size_t>(ordering[j]);
        if (j > 0) {
            SignVector p = pattern;
            p.set(e, negate(base[e]));
            if (!feasible_partial(a, p, constrained | singleton(e))) return {false, static_cast<int>(j)};
        }
        constrained |= singleton(e);
    }
    return {};
}

CutCheck cut_property_check(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering) {
    check_ordering(ordering, m.ground_size());
    if (!m.is_tope(base)) throw DomainError("base " + base.str() + " is not a tope");
    ElementSet constrained = 0;
    for (std::size_t j = 0; j < ordering.size(); ++j) {
        auto e = static_cast<std::size_t>(ordering[j]);
        if (j > 0) {
            SignVector want = base.flipped(e);
            ElementSet mask = constrained | singleton(e);
            bool hit = std::any_of(m.topes().begin(), m.topes().end(), [&](const SignVector& t) {
                return (t.pos() & mask) == (want.pos() & mask) && (t.neg() & mask) == (want.neg() & mask);
            });
            if (!hit) return {false, static_cast<int>(j)};
        }
        constrained |= singleton(e);
    }
    return {};
}

std::vector<int> generate_cut_ordering(const OrientedMatroid& m, const SignVector& base) {
    if (!m.is_tope(base)) throw DomainError("base " + base.str() + " is not a tope");
    if (!m.is_simple()) throw DomainError("cut orderings need a simple oriented matroid");
    std::vector<int> out;
    SignVector cur = base, target = -base;
    while (cur != target) {
        int pick = -1;
        for (int e : elements_of(separation_set(cur, target)))
            if (m.is_tope(cur.flipped(static_cast<std::size_t>(e)))) {
                pick = e;
                break;
            }
        if (pick < 0) throw TheoremViolation("cut_chain", "no admissible wall at " + cur.str());
        out.push_back(pick);
        cur = cur.flipped(static_cast<std::size_t>(pick));
    }
    return out;
}

Rem0Oracle::Rem0Oracle(const OrientedMatroid& m, const FacePoset& fp, SignVector base, TopeOrder extension)
    : m_(m), fp_(fp), base_(std::move(base)), extension_(std::move(extension)), context_of_(fp.covectors.size(), -1) {}

LinearOrder Rem0Oracle::top_order() const {
    LinearOrder o;
    for (const auto& t : extension_) o.push_back(m_.index_of(t));
    return o;
}

Rem0Oracle::Chain Rem0Oracle::canonical_chain(const SignVector& from, const SignVector& via) const {
    Chain ch;
    ch.steps.push_back(from);
    auto leg = [&](const SignVector& target) {
        SignVector cur = ch.steps.back();
        while (cur != target) {
            ElementSet sep = separation_set(cur, target);
            ElementSet best = 0;
            for (const auto& c : m_.face_coatoms(cur)) {
                ElementSet k = c.zero_set() & ~cur.zero_set();
                if (is_subset(k, sep) && (best == 0 || (k & -k) < (best & -best))) best = k;
            }
            if (best == 0) throw TheoremViolation("rem0_chain", "stuck at " + cur.str() + " towards " + target.str());
            SignVector next = compose(cur.zeroed(best), -cur);
            ch.crossed.push_back(best);
            ch.steps.push_back(next);
            cur = next;
        }
    };
    leg(via);
    leg(-from);
    return ch;
}

int Rem0Oracle::chain_index(const SignVector& from, const SignVector& via) {
    auto key = std::make_pair(from, via);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    chains_.push_back(canonical_chain(from, via));
    int id = static_cast<int>(chains_.size()) - 1;
    memo_.emplace(key, id);
    return id;
}

SignVector Rem0Oracle::seed_for(const Chain& parent_chain, const SignVector& parent, const SignVector& child) const {
    ElementSet k = child.zero_set() & ~parent.zero_set();
    for (std::size_t t = 0; t < parent_chain.crossed.size(); ++t)
        if (parent_chain.crossed[t] == k) return parent_chain.steps[t].zeroed(k);
    throw TheoremViolation("rem0_chain", "chain of " + parent.str() + " never crosses " + format_set(k));
}

std::vector<int> Rem0Oracle::order_from_chain(int p, const Chain& chain, const std::vector<int>& prefix) const {
    const SignVector& pv = fp_.covectors[static_cast<std::size_t>(p)];
    std::vector<std::pair<std::pair<int, std::size_t>, int>> keyed;
    for (int c : fp_.poset.coatoms(p)) {
        ElementSet k = fp_.covectors[static_cast<std::size_t>(c)].zero_set() & ~pv.zero_set();
        auto it = std::find(chain.crossed.begin(), chain.crossed.end(), k);
        if (it == chain.crossed.end())
            throw TheoremViolation("rem0_chain", "chain of " + pv.str() + " never crosses " + format_set(k));
        int forced = std::find(prefix.begin(), prefix.end(), c) != prefix.end() ? 0 : 1;
        keyed.push_back({{forced, static_cast<std::size_t>(it - chain.crossed.begin())}, c});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (const auto& kv : keyed) out.push_back(kv.second);
    return out;
}

std::vector<int> Rem0Oracle::order(int p, const std::vector<int>& prefix, int parent) {
    const SignVector& pv = fp_.covectors[static_cast<std::size_t>(p)];
    int id;
    if (parent < 0) {
        id = chain_index(pv, base_);
    } else {
        int pc = context_of_[static_cast<std::size_t>(parent)];
        if (pc < 0) throw StructuralError("rem0 oracle: parent " + fp_.poset.label(parent) + " was never expanded");
        SignVector seed = seed_for(chains_[static_cast<std::size_t>(pc)], fp_.covectors[static_cast<std::size_t>(parent)], pv);
        id = chain_index(pv, seed);
    }
    context_of_[static_cast<std::size_t>(p)] = id;
    return order_from_chain(p, chains_[static_cast<std::size_t>(id)], prefix);
}

RcoFrame Rem0Oracle::root() {
    RcoFrame f;
    f.top = -1;
    f.order = top_order();
    f.key = "root";
    return f;
}

RcoFrame Rem0Oracle::child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) {
    const SignVector& cv = fp_.covectors[static_cast<std::size_t>(coatom)];
    SignVector seed = base_;
    if (parent.top >= 0)
        seed = seed_for(chains_[static_cast<std::size_t>(parent.context)],
                        fp_.covectors[static_cast<std::size_t>(parent.top)], cv);
    RcoFrame f;
    f.top = coatom;
    f.context = chain_index(cv, seed);
    f.order = order_from_chain(coatom, chains_[static_cast<std::size_t>(f.context)], prefix);
    f.key = std::to_string(coatom) + "|" + seed.str() + "|" + join_ints(prefix);
    return f;
}

FaceMatching face_poset_matching(const OrientedMatroid& m, const SignVector& base, const TopeOrder& extension,
                                 bool verify) {
    if (!m.is_simple()) throw DomainError("face poset matching needs a simple oriented matroid");
    TopePoset tp = tope_poset(m, base);
    if (!is_linear_extension(tp, extension)) throw DomainError("order is not a linear extension of the tope poset");

    FaceMatching out{face_poset(m), {}, {}, {}};
    Rem0Oracle oracle(m, out.faces, base, extension);
    out.ordering = build_shelling_type_ordering(out.faces.poset, oracle.top_order(), oracle);
    out.matching = matching_from_ordering(out.faces.poset, out.ordering, true);
    check_matching(out.matching, out.faces.poset);

    auto ac = is_acyclic(out.matching, out.faces.poset);
    if (!ac.acyclic) {
        std::string w = "cycle";
        for (int x : ac.cycle) w += " " + out.faces.poset.label(x);
        throw TheoremViolation("linext_acmatch", w);
    }
    out.critical = critical_cells(out.faces.poset, out.matching);
    int opp = m.index_of(-base);
    if (out.critical.size() != 1 || out.critical.front().element != opp) {
        std::string w = "critical {";
        for (const auto& c : out.critical) w += " " + out.faces.poset.label(c.element);
        throw TheoremViolation("linext_acmatch", w + " } expected { " + (-base).str() + " }");
    }
    if (verify) {
        RcoResult r = verify_rco(out.faces.poset, oracle);
        if (!r.ok) throw TheoremViolation("rem0_rco", r.message);
        std::vector<int> hf = homology_facets(out.faces.poset, out.ordering.facet_order);
        if (hf != std::vector<int>{opp}) throw TheoremViolation("cw_ac", "homology facets differ from {-B}");
    }
    return out;
}

}  // namespace omorse
