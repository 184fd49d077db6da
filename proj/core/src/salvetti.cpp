#include "omorse/salvetti.hpp"

#include <algorithm>

#include <json.hpp>

#include "omorse/error.hpp"

namespace omorse {

int SalvettiComplex::index_of(const SignVector& face, const SignVector& tope) const {
    auto it = lookup.find({face, tope});
    return it == lookup.end() ? -1 : it->second;
}

SalvettiComplex build_salvetti(const OrientedMatroid& m, bool with_bottom) {
    SalvettiComplex s;
    s.faces = face_poset(m);
    std::vector<SignVector> topes = m.topes();
    std::sort(topes.begin(), topes.end());
    for (const auto& f : s.faces.covectors)
        for (const auto& t : topes)
            if (face_leq(f, t)) {
                s.lookup.emplace(std::make_pair(f, t), static_cast<int>(s.cells.size()));
                s.cells.push_back({f, t});
                s.dim.push_back(m.flat_rank(f.zero_set()));
            }
    std::vector<std::string> labels;
    for (const auto& c : s.cells) labels.push_back(c.label());
    std::vector<std::pair<int, int>> covers;
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        const auto& c = s.cells[i];
        int fi = m.index_of(c.face);
        for (int g : s.faces.poset.parents(fi)) {
            const SignVector& gv = s.faces.covectors[static_cast<std::size_t>(g)];
            covers.emplace_back(static_cast<int>(i), s.index_of(gv, compose(gv, c.tope)));
        }
    }
    if (with_bottom) {
        s.bottom = static_cast<int>(s.cells.size());
        labels.push_back("0^");
        for (std::size_t i = 0; i < s.cells.size(); ++i)
            if (s.dim[i] == 0) covers.emplace_back(static_cast<int>(i), s.bottom);
    }
    s.poset = FinitePoset(std::move(labels), std::move(covers));
    return s;
}

namespace {

std::vector<ElementSet> separators(const TopeOrder& extension, const SignVector& c) {
    auto it = std::find(extension.begin(), extension.end(), c);
    if (it == extension.end()) throw DomainError(c.str() + " does not occur in the extension");
    std::vector<ElementSet> out;
    for (auto k = extension.begin(); k != it; ++k) out.push_back(separation_set(c, *k));
    return out;
}

std::string flat_list(const std::vector<ElementSet>& v) {
    std::string s;
    for (auto x : v) s += format_set(x) + " ";
    return s;
}

}  // namespace

std::vector<ElementSet> j_set(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c) {
    auto seps = separators(extension, c);
    std::vector<ElementSet> out;
    for (ElementSet x : m.flats())
        if (std::all_of(seps.begin(), seps.end(), [&](ElementSet s) { return (s & x) != 0; })) out.push_back(x);
    return out;
}

ElementSet compute_xc(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c) {
    auto j = j_set(m, extension, c);
    if (j.empty()) throw TheoremViolation("propJc", "J(" + c.str() + ") is empty");
    ElementSet meet = full_set(m.ground_size());
    for (ElementSet x : j) meet &= x;
    std::vector<ElementSet> filter;
    for (ElementSet x : m.flats())
        if (is_subset(meet, x)) filter.push_back(x);
    if (filter != j)
        throw TheoremViolation("propJc", "J(" + c.str() + ") = { " + flat_list(j) + "} is not principal");
    return meet;
}

ElementSet xc_by_conditions(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c) {
    auto seps = separators(extension, c);
    std::vector<ElementSet> hits;
    for (ElementSet x : m.flats()) {
        bool meets_all = std::all_of(seps.begin(), seps.end(), [&](ElementSet s) { return (s & x) != 0; });
        if (!meets_all) continue;
        bool rest = true;
        for (ElementSet y : m.flats()) {
            if (is_subset(x, y)) continue;
            if (std::none_of(seps.begin(), seps.end(), [&](ElementSet s) { return (s & y) == 0; })) {
                rest = false;
                break;
            }
        }
        if (rest) hits.push_back(x);
    }
    if (hits.size() != 1) throw TheoremViolation("tec_lm", c.str() + " candidates { " + flat_list(hits) + "}");
    return hits.front();
}

SignVector distinguished_face(const OrientedMatroid& m, const SignVector& c, ElementSet x) {
    SignVector f = c.zeroed(x);
    if (!m.is_covector(f)) throw TheoremViolation("ciliegina", f.str() + " is not a covector");
    if (f.zero_set() != x) throw TheoremViolation("ciliegina", "|" + f.str() + "| != " + format_set(x));
    return f;
}

Stratification stratify(const OrientedMatroid& m, const SalvettiComplex& s, const TopeOrder& extension, bool check) {
    Stratification st;
    st.stratum_of.assign(s.cells.size(), -1);
    for (std::size_t k = 0; k < extension.size(); ++k) {
        const SignVector& c = extension[k];
        Stratum str;
        str.tope = c;
        str.flat = compute_xc(m, extension, c);
        str.codim = m.flat_rank(str.flat);
        str.face = distinguished_face(m, c, str.flat);
        for (const auto& f : s.faces.covectors) {
            int i = s.index_of(f, compose(f, c));
            if (st.stratum_of[static_cast<std::size_t>(i)] < 0) {
                st.stratum_of[static_cast<std::size_t>(i)] = static_cast<int>(k);
                str.cells.push_back(i);
            }
        }
        st.strata.push_back(std::move(str));
    }
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        if (st.stratum_of[i] < 0) throw TheoremViolation("sal_cplx", "cell " + s.cells[i].label() + " in no stratum");
    if (!check) return st;

    for (std::size_t k = 0; k < st.strata.size(); ++k) {
        const Stratum& str = st.strata[k];
        const std::string who = "stratum " + str.tope.str() + ": ";
        Contraction con = contraction(m, str.flat);
        FacePoset cf = face_poset(con.om);
        std::vector<int> image;
        for (const auto& v : cf.covectors) {
            SignVector f = con.lift(v, m.ground_size());
            int i = s.index_of(f, compose(f, str.tope));
            if (i < 0 || st.stratum_of[static_cast<std::size_t>(i)] != static_cast<int>(k))
                throw TheoremViolation("contr", who + f.str() + " maps outside N(C)");
            image.push_back(i);
        }
        if (image.size() != str.cells.size())
            throw TheoremViolation("contr", who + std::to_string(str.cells.size()) + " cells vs " +
                                                std::to_string(image.size()) + " faces of the contraction");
        std::size_t edges = 0, inside = 0;
        for (std::size_t a = 0; a < cf.covectors.size(); ++a)
            for (int b : cf.poset.coatoms(static_cast<int>(a))) {
                ++edges;
                if (!s.poset.covers(image[static_cast<std::size_t>(b)], image[a]))
                    throw TheoremViolation("contr", who + "cover " + cf.covectors[a].str() + " > " +
                                                        cf.covectors[static_cast<std::size_t>(b)].str() + " not reversed");
            }
        for (int i : str.cells)
            for (int low : s.poset.coatoms(i))
                if (low != s.bottom && st.stratum_of[static_cast<std::size_t>(low)] == static_cast<int>(k)) ++inside;
        if (edges != inside)
            throw TheoremViolation("contr", who + std::to_string(inside) + " covers in N(C) vs " + std::to_string(edges));
    }
    return st;
}

SalvettiMatching patchwork_matching(const OrientedMatroid& m, const SalvettiComplex& s, const Stratification& st) {
    SalvettiMatching out;
    out.matching = Matching(s.poset.size());
    for (const auto& str : st.strata) {
        const std::string who = "stratum " + str.tope.str();
        Contraction con = contraction(m, str.flat);
        Simplification sim = simplify(con.om);
        auto to_cell = [&](const SignVector& v) {
            SignVector f = con.lift(sim.expand(v, con.om.ground_size()), m.ground_size());
            int i = s.index_of(f, compose(f, str.tope));
            if (i < 0) throw TheoremViolation("maxmat", who + ": " + f.str() + " has no cell");
            return i;
        };
        if (sim.om.size() > 1) {
            SignVector base = sim.compress((-str.tope).project(con.index_map));
            TopeOrder ext = lex_extension(sim.om, base, identity_ordering(sim.om.ground_size()));
            FaceMatching fm;
            try {
                fm = face_poset_matching(sim.om, base, ext);
            } catch (const TheoremViolation& e) {
                throw TheoremViolation(e.check(), who + ": " + e.witness());
            }
            // Faces reverse order in the stratum: the upper face becomes the lower cell.
            for (auto [up, low] : fm.matching.pairs())
                out.matching.add(to_cell(fm.faces.covectors[static_cast<std::size_t>(low)]),
                                 to_cell(fm.faces.covectors[static_cast<std::size_t>(up)]));
        }
    }
    check_matching(out.matching, s.poset);
    auto ac = is_acyclic(out.matching, s.poset);
    if (!ac.acyclic) {
        std::string w;
        for (int x : ac.cycle) w += s.poset.label(x) + " ";
        throw TheoremViolation("maxmat", "cycle " + w);
    }
    std::vector<int> per(st.strata.size(), -1);
    for (int x : out.matching.unmatched()) {
        if (x == s.bottom) continue;
        int k = st.stratum_of[static_cast<std::size_t>(x)];
        if (per[static_cast<std::size_t>(k)] >= 0)
            throw TheoremViolation("maxmat", "two critical cells in stratum " + st.strata[static_cast<std::size_t>(k)].tope.str());
        per[static_cast<std::size_t>(k)] = x;
    }
    for (std::size_t k = 0; k < st.strata.size(); ++k) {
        const Stratum& str = st.strata[k];
        int want = s.index_of(str.face, str.tope);
        if (per[k] != want)
            throw TheoremViolation("maxmat", "stratum " + str.tope.str() + " critical " +
                                                 (per[k] < 0 ? std::string("none") : s.poset.label(per[k])) +
                                                 " expected " + s.cells[static_cast<std::size_t>(want)].label());
        if (s.dim[static_cast<std::size_t>(want)] != str.codim)
            throw TheoremViolation("maxmat", "critical " + s.poset.label(want) + " has the wrong dimension");
        out.critical.push_back({want, str.codim});
    }
    return out;
}

std::string salvetti_json(const SalvettiComplex& s, const Stratification* st, const SalvettiMatching* sm) {
    nlohmann::json j;
    j["cells"] = nlohmann::json::array();
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        j["cells"].push_back({{"label", s.cells[i].label()}, {"dim", s.dim[i]}});
    j["covers"] = nlohmann::json::array();
    for (auto [up, low] : s.poset.cover_pairs()) j["covers"].push_back({s.poset.label(up), s.poset.label(low)});
    if (st) {
        j["strata"] = nlohmann::json::array();
        for (const auto& str : st->strata) {
            nlohmann::json cells = nlohmann::json::array();
            for (int i : str.cells) cells.push_back(s.poset.label(i));
            j["strata"].push_back({{"tope", str.tope.str()},
                                   {"flat", elements_of(str.flat)},
                                   {"codim", str.codim},
                                   {"face", str.face.str()},
                                   {"cells", cells}});
        }
    }
    if (sm) {
        j["matching"] = nlohmann::json::array();
        for (auto [up, low] : sm->matching.pairs()) j["matching"].push_back({s.poset.label(up), s.poset.label(low)});
        j["critical"] = nlohmann::json::array();
        for (const auto& c : sm->critical) j["critical"].push_back({{"cell", s.poset.label(c.element)}, {"dim", c.dim}});
    }
    return j.dump(2);
}

}  // namespace omorse
