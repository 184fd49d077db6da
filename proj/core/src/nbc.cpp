#include "omorse/nbc.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "omorse/error.hpp"
#include "omorse/zonotope.hpp"

namespace omorse {

namespace {

constexpr std::size_t kMaxCircuitGround = 16;

std::vector<ElementSet> minimal_dependent(std::size_t n, const std::function<bool(ElementSet)>& dependent) {
    if (n > kMaxCircuitGround)
        throw LimitExceeded("circuit enumeration is limited to " + std::to_string(kMaxCircuitGround) + " hyperplanes");
    std::vector<ElementSet> subsets(std::size_t{1} << n);
    std::iota(subsets.begin(), subsets.end(), ElementSet{0});
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](ElementSet x, ElementSet y) { return popcount(x) < popcount(y); });
    std::vector<ElementSet> out;
    for (ElementSet s : subsets) {
        if (std::any_of(out.begin(), out.end(), [&](ElementSet c) { return is_subset(c, s); })) continue;
        if (dependent(s)) out.push_back(s);
    }
    return out;
}

std::vector<int> prefix_indices(std::size_t k) {
    std::vector<int> v(k);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

SignVector unpermute(const SignVector& sel, const std::vector<int>& ordering) {
    SignVector out(sel.size());
    for (std::size_t i = 0; i < ordering.size(); ++i) out.set(static_cast<std::size_t>(ordering[i]), sel[i]);
    return out;
}

// C'' = H_n cap C, read through the representatives of the restriction.
SignVector restrict_tope(const SignVector& c, const std::vector<int>& reps) {
    SignVector out(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) out.set(i, c[static_cast<std::size_t>(reps[i])]);
    return out;
}

struct Node {
    Arrangement a;
    std::vector<int> labels;
    SignVector base;
};

std::map<SignVector, ElementSet> eta_rec(const Node& node, RestrictionCheck* rc) {
    const std::size_t n = node.a.size();
    std::map<SignVector, ElementSet> out;
    if (n == 1) {
        out[node.base] = 0;
        out[-node.base] = singleton(static_cast<std::size_t>(node.labels[0]));
        return out;
    }
    Node del{essentialize(node.a.select(prefix_indices(n - 1))),
             std::vector<int>(node.labels.begin(), node.labels.end() - 1), node.base.project(prefix_indices(n - 1))};
    Restriction r = restriction(node.a, singleton(n - 1));
    Node res{essentialize(r.arrangement), {}, restrict_tope(node.base, r.labels)};
    for (int j : r.labels) res.labels.push_back(node.labels[static_cast<std::size_t>(j)]);

    OrientedMatroid m = enumerate_covectors(node.a);
    if (!m.is_tope(node.base.flipped(n - 1))) {
        std::string w = "hyperplane " + std::to_string(node.labels.back()) + " is not a wall of " + node.base.str() +
                        " in the sub-arrangement {";
        for (int l : node.labels) w += " " + std::to_string(l);
        throw TheoremViolation("cut_restriction", w + " }");
    }
    auto eta1 = eta_rec(del, rc);
    auto eta2 = eta_rec(res, rc);
    const ElementSet hn = singleton(static_cast<std::size_t>(node.labels.back()));
    std::map<int, std::size_t> index_of_label;
    for (std::size_t i = 0; i < n; ++i) index_of_label[node.labels[i]] = i;
    auto rows = [&](ElementSet labels) {
        RMatrix out{node.a.normal(n - 1)};
        for (int l : elements_of(labels)) out.push_back(node.a.normal(index_of_label.at(l)));
        return out;
    };

    for (const auto& c : m.topes()) {
        SignVector cp = c.project(prefix_indices(n - 1));
        bool cut = m.is_tope(c.flipped(n - 1));
        bool low = c[n - 1] == node.base[n - 1];
        if (!cut || low) {
            out[c] = eta1.at(cp);
        } else {
            out[c] = hn | eta2.at(restrict_tope(c, r.labels));
        }
        if (rc && cut && low) {
            ++rc->checked;
            ElementSet e1 = eta1.at(cp), e2 = eta2.at(restrict_tope(c, r.labels));
            if (!same_row_space(rows(e1), rows(e2)) && rc->ok) {
                rc->ok = false;
                rc->witness = "chamber " + cp.str() + " of the deletion of " + std::to_string(node.labels.back()) +
                              ": eta' " + format_set(e1) + " vs eta'' " + format_set(e2);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ElementSet> circuits(const Arrangement& a) {
    return minimal_dependent(a.size(), [&](ElementSet s) {
        return rank(a.normals_of(s)) < static_cast<std::size_t>(popcount(s));
    });
}

std::vector<ElementSet> circuits(const OrientedMatroid& m) {
    return minimal_dependent(m.ground_size(), [&](ElementSet s) { return m.set_rank(s) < popcount(s); });
}

std::vector<ElementSet> nbc_sets(const std::vector<ElementSet>& circs, std::size_t n, const std::vector<int>& ordering) {
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < ordering.size(); ++i) pos[static_cast<std::size_t>(ordering[i])] = static_cast<int>(i);
    std::vector<ElementSet> broken;
    for (ElementSet c : circs) {
        auto el = elements_of(c);
        int first = *std::min_element(el.begin(), el.end(), [&](int x, int y) {
            return pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)];
        });
        broken.push_back(c & ~singleton(static_cast<std::size_t>(first)));
    }
    std::vector<ElementSet> out;
    for (ElementSet s = 0; s < (ElementSet{1} << n); ++s)
        if (std::none_of(broken.begin(), broken.end(), [&](ElementSet b) { return is_subset(b, s); })) out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](ElementSet x, ElementSet y) { return popcount(x) < popcount(y); });
    return out;
}

std::vector<ElementSet> nbc_complex(const Arrangement& a, const std::vector<int>& ordering) {
    return nbc_sets(circuits(a), a.size(), ordering);
}

ElementSet EtaTable::of(const SignVector& c) const {
    auto it = eta.find(c);
    if (it == eta.end()) throw DomainError(c.str() + " is not a chamber");
    return it->second;
}

EtaTable eta(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering, RestrictionCheck* rc) {
    a.validate();
    CutCheck cc = cut_property_check(a, base, ordering);
    if (!cc.ok)
        throw DomainError("ordering lacks the cut property: hyperplane " +
                          std::to_string(ordering[static_cast<std::size_t>(cc.failing_position)]) + " at position " +
                          std::to_string(cc.failing_position) + " does not cut");
    EtaTable t;
    t.base = base;
    t.ordering = ordering;
    Node root{a.select(ordering), ordering, base.project(ordering)};
    for (const auto& [c, e] : eta_rec(root, rc)) t.eta[unpermute(c, ordering)] = e;

    if (t.of(base) != 0) throw TheoremViolation("jobij", "eta(B) = " + format_set(t.of(base)));
    std::vector<ElementSet> values;
    for (const auto& kv : t.eta) values.push_back(kv.second);
    std::sort(values.begin(), values.end());
    std::vector<ElementSet> nbc = nbc_complex(a, ordering);
    std::sort(nbc.begin(), nbc.end());
    if (values != nbc) {
        std::string w = "image {";
        for (auto v : values) w += " " + format_set(v);
        w += " } vs nbc {";
        for (auto v : nbc) w += " " + format_set(v);
        throw TheoremViolation("jobij", w + " }");
    }
    return t;
}

RestrictionCheck verify_restriction_lemma(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering) {
    RestrictionCheck rc;
    eta(a, base, ordering, &rc);
    return rc;
}

std::vector<CorrespRow> verify_corresp(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering,
                                       bool report_only) {
    EtaTable t = eta(a, base, ordering);
    OrientedMatroid m = enumerate_covectors(a);
    TopeOrder ext = lex_extension(m, base, ordering);
    std::vector<CorrespRow> rows;
    for (const auto& c : ext) {
        CorrespRow row;
        row.tope = c;
        row.sigma = sigma(c, base, ordering);
        row.eta = t.of(c);
        row.eta_flat = closure(a, row.eta);
        try {
            row.xc = compute_xc(m, ext, c);
            row.equal = row.xc == row.eta_flat;
        } catch (const TheoremViolation&) {
            if (!report_only) throw;
            row.xc = 0;
            row.equal = false;
        }
        if (!row.equal && !report_only)
            throw TheoremViolation("corresp", c.str() + ": X_C " + format_set(row.xc) + " vs span of eta " +
                                                  format_set(row.eta_flat));
        rows.push_back(row);
    }
    return rows;
}

std::vector<SalvettiCell> critical_cells_via_nbc(const Arrangement& a, const SignVector& base,
                                                 const std::vector<int>& ordering, bool check) {
    EtaTable t = eta(a, base, ordering);
    OrientedMatroid m = enumerate_covectors(a);
    TopeOrder ext = lex_extension(m, base, ordering);
    std::vector<SalvettiCell> out;
    for (const auto& c : ext) out.push_back({distinguished_face(m, c, closure(a, t.of(c))), c});
    if (!check) return out;

    SalvettiComplex s = build_salvetti(m);
    Stratification st = stratify(m, s, ext);
    SalvettiMatching sm = patchwork_matching(m, s, st);
    std::set<std::pair<SignVector, SignVector>> want, got;
    for (const auto& cell : out) want.insert({cell.face, cell.tope});
    for (const auto& cc : sm.critical) {
        const auto& cell = s.cells[static_cast<std::size_t>(cc.element)];
        got.insert({cell.face, cell.tope});
    }
    if (want != got) {
        std::string w;
        for (const auto& [f, tt] : want)
            if (!got.count({f, tt})) w += " " + f.str() + "|" + tt.str();
        throw TheoremViolation("result", "missing from the matching:" + w);
    }
    return out;
}

LexCompatibility lex_compatibility(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering) {
    LexCompatibility out;
    const std::size_t n = a.size();
    if (n < 2) return out;
    Arrangement sel = a.select(ordering);
    SignVector b = base.project(ordering);
    OrientedMatroid m = enumerate_covectors(sel);
    TopeOrder ext = lex_extension(m, b, identity_ordering(n));
    std::map<SignVector, std::size_t> pos;
    for (std::size_t i = 0; i < ext.size(); ++i) pos[ext[i]] = i;

    auto sorted_by = [](TopeOrder topes, const std::function<std::size_t(const SignVector&)>& key) {
        std::stable_sort(topes.begin(), topes.end(),
                         [&](const SignVector& x, const SignVector& y) { return key(x) < key(y); });
        return topes;
    };

    OrientedMatroid md = enumerate_covectors(essentialize(sel.select(prefix_indices(n - 1))));
    SignVector bd = b.project(prefix_indices(n - 1));
    auto psi = [&](const SignVector& cp) {
        std::size_t best = ext.size();
        for (const auto& c : ext)
            if (c.project(prefix_indices(n - 1)) == cp) best = std::min(best, pos[c]);
        return best;
    };
    out.deletion = sorted_by(md.topes(), psi) == lex_extension(md, bd, identity_ordering(n - 1));

    Restriction r = restriction(sel, singleton(n - 1));
    OrientedMatroid mr = enumerate_covectors(essentialize(r.arrangement));
    SignVector br = restrict_tope(b, r.labels);
    auto up = [&](const SignVector& cr) {
        for (const auto& c : ext)
            if (c[n - 1] != b[n - 1] && m.is_tope(c.flipped(n - 1)) && restrict_tope(c, r.labels) == cr) return pos[c];
        return ext.size();
    };
    out.restriction = sorted_by(mr.topes(), up) == lex_extension(mr, br, identity_ordering(r.labels.size()));
    return out;
}

}  // namespace omorse
