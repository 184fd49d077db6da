// One PASS/FAIL line per acceptance criterion.
//
//   acceptance            run all seven
//   acceptance --only N   run criterion N; exit status is its result
//
// Criterion 6 is known to fail (theorem checks are violated by valid random
// rank-3 inputs); the full run reports it and exits 0 only if every other
// criterion passes.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "omorse/error.hpp"
#include "omorse/nbc.hpp"
#include "omorse/salvetti.hpp"
#include "omorse/shelling.hpp"
#include "omorse/zonotope.hpp"
#include "oracles.hpp"

using namespace omorse;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fixture(const std::string& name) { return std::string(OMORSE_FIXTURES) + "/" + name; }

const oracle::IMatrix kHex3{{1, 0}, {0, 1}, {-1, 1}};
const oracle::IMatrix kK3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

std::vector<ElementSet> one_based(std::initializer_list<std::vector<int>> sets) {
    std::vector<ElementSet> out;
    for (const auto& s : sets) {
        ElementSet e = 0;
        for (int h : s) e |= singleton(static_cast<std::size_t>(h - 1));
        out.push_back(e);
    }
    return out;
}

Outcome hexagon_shelling() {
    FinitePoset p = FinitePoset::load(fixture("hexagon.poset"));
    LinearOrder top;
    for (auto l : {"I", "II", "III", "IV", "V", "VI"}) top.push_back(p.index_of(l));
    CanonicalOracle oracle(p);
    ShellingTypeOrdering s = build_shelling_type_ordering(p, top, oracle);
    std::string got;
    for (int x : s.global) got += (got.empty() ? "" : " ") + p.label(x);
    Matching m = matching_from_ordering(p, s, false);
    std::map<int, int> crit;
    for (const auto& c : critical_cells(p, m))
        if (c.dim >= 0) ++crit[c.dim];
    Outcome o;
    o.pass = got == "I a b II f III e IV c V d VI 0" && oracle::acyclic(p, m) && crit == std::map<int, int>{{0, 1}, {1, 1}};
    o.detail = "order " + got + "; critical 0-cells " + std::to_string(crit[0]) + ", 1-cells " + std::to_string(crit[1]);
    return o;
}

Outcome lex_sigma() {
    auto m = enumerate_covectors(oracle::to_arrangement(kHex3));
    SignVector b = SignVector::parse("+++");
    std::string got;
    for (const auto& c : lex_extension(m, b, {0, 1, 2})) {
        got += got.empty() ? "" : " ";
        for (int x : sigma(c, b, {0, 1, 2})) got += static_cast<char>('0' + x);
    }
    return {got == "000 001 011 100 110 111", "sigma " + got};
}

Outcome single_critical() {
    std::size_t runs = 0, bad = 0;
    auto check = [&](const OrientedMatroid& m, const SignVector& b, const TopeOrder& e) {
        ++runs;
        FaceMatching fm = face_poset_matching(m, b, e, true);
        bool ok = oracle::acyclic(fm.faces.poset, fm.matching) && fm.critical.size() == 1 &&
                  fm.faces.covectors[static_cast<std::size_t>(fm.critical[0].element)] == -b;
        bad += !ok;
    };
    auto h = enumerate_covectors(oracle::to_arrangement(kHex3));
    for (const auto& b : h.topes())
        for (const auto& e : all_linear_extensions(tope_poset(h, b))) check(h, b, e);
    auto k = enumerate_covectors(oracle::to_arrangement(kK3));
    SignVector kb = SignVector::parse("+++");
    TopePoset tk = tope_poset(k, kb);
    check(k, kb, lex_extension(k, kb, {0, 1, 2}));
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) check(k, kb, random_linear_extension(tk, rng));
    return {bad == 0, std::to_string(runs) + " extensions, " + std::to_string(bad) + " without a unique critical -B"};
}

Outcome salvetti_hex3() {
    auto a = oracle::to_arrangement(kHex3);
    auto m = enumerate_covectors(a);
    SignVector b = SignVector::parse("+++");
    TopeOrder ext = lex_extension(m, b, {0, 1, 2});
    SalvettiComplex s = build_salvetti(m);
    SalvettiMatching sm = patchwork_matching(m, s, stratify(m, s, ext));
    std::vector<int> dims;
    std::set<std::string> crit, via_eta;
    long chi_crit = 0, chi = 0;
    for (const auto& c : sm.critical) {
        dims.push_back(c.dim);
        chi_crit += c.dim % 2 ? -1 : 1;
        crit.insert(s.cells[static_cast<std::size_t>(c.element)].label());
    }
    for (int d : s.dim) chi += d % 2 ? -1 : 1;
    for (const auto& c : critical_cells_via_nbc(a, b, {0, 1, 2}, false)) via_eta.insert(c.label());
    Outcome o;
    o.pass = s.cell_count() == 24 && dims == std::vector<int>{0, 1, 1, 1, 2, 2} && crit == via_eta && chi_crit == 0 &&
             chi == 0 && oracle::acyclic(s.poset, sm.matching);
    std::ostringstream d;
    d << s.cell_count() << " cells, " << sm.critical.size() << " critical, chi " << chi_crit << " / " << chi
      << (crit == via_eta ? ", critical set = <cap eta(C) cap C, C>" : ", critical set differs from the eta cells");
    o.detail = d.str();
    return o;
}

Outcome nbc_identities() {
    auto h = oracle::to_arrangement(kHex3);
    auto nbc = nbc_complex(h, {0, 1, 2});
    std::set<ElementSet> got(nbc.begin(), nbc.end());
    auto want = one_based({{}, {1}, {2}, {3}, {1, 2}, {1, 3}});
    bool hex_ok = got == std::set<ElementSet>(want.begin(), want.end());

    auto k = oracle::to_arrangement(kK3);
    SignVector b = SignVector::parse("+++");
    EtaTable t = eta(k, b, {0, 1, 2});
    std::vector<ElementSet> seq;
    for (const auto& c : lex_extension(enumerate_covectors(k), b, {0, 1, 2})) seq.push_back(t.of(c));
    bool k_ok = oracle::relabel_equivalent(seq, one_based({{}, {3}, {2}, {2, 3}, {1}, {1, 3}, {1, 2}, {1, 2, 3}}), 3);
    return {hex_ok && k_ok, std::string("hex3 nbc ") + (hex_ok ? "exact" : "differs") + ", K3 sequence " +
                                (k_ok ? "matches up to relabelling" : "differs")};
}

struct Corpus {
    oracle::IMatrix rows;
    Arrangement a;
    OrientedMatroid m;
    SignVector base;
    std::vector<int> ordering;
};

std::vector<Corpus> corpus(std::size_t count, std::uint64_t seed) {
    gen::Arrangements g(seed);
    std::vector<Corpus> out;
    while (out.size() < count) {
        std::size_t d = 2 + g.rng()() % 2;
        std::size_t n = d + g.rng()() % (6 - d);
        Corpus c;
        c.rows = g.next(n, d, 4);
        c.a = oracle::to_arrangement(c.rows);
        c.m = enumerate_covectors(c.a);
        c.base = g.pick(c.m.topes());
        c.ordering = generate_cut_ordering(c.m, c.base);
        out.push_back(std::move(c));
    }
    return out;
}

Outcome theorem_checks() {
    const std::vector<std::string> names{"propJc", "ciliegina", "contr", "jobij", "inters_nbc", "corresp", "counts"};
    std::map<std::string, std::size_t> fails;
    std::size_t clean = 0;
    auto items = corpus(200, 20240601);
    for (const auto& c : items) {
        std::set<std::string> failed;
        auto attempt = [&](const std::string& name, const std::function<void()>& f) {
            try {
                f();
            } catch (const TheoremViolation&) {
                failed.insert(name);
            }
        };
        TopeOrder ext = lex_extension(c.m, c.base, c.ordering);
        for (const auto& t : ext) {
            std::optional<ElementSet> x;
            attempt("propJc", [&] { x = compute_xc(c.m, ext, t); });
            if (x) attempt("ciliegina", [&] { distinguished_face(c.m, t, *x); });
        }
        SalvettiComplex s = build_salvetti(c.m);
        attempt("contr", [&] { stratify(c.m, s, ext, true); });
        std::optional<EtaTable> et;
        attempt("jobij", [&] { et = eta(c.a, c.base, c.ordering); });
        attempt("inters_nbc", [&] {
            if (!verify_restriction_lemma(c.a, c.base, c.ordering).ok) throw TheoremViolation("inters_nbc", "");
        });
        attempt("corresp", [&] { verify_corresp(c.a, c.base, c.ordering); });
        attempt("counts", [&] {
            SalvettiMatching sm = patchwork_matching(c.m, s, stratify(c.m, s, ext, false));
            std::map<int, std::size_t> crit, sizes;
            for (const auto& cc : sm.critical) ++crit[cc.dim];
            for (ElementSet e : nbc_complex(c.a, c.ordering)) ++sizes[popcount(e)];
            if (crit != sizes) throw TheoremViolation("counts", "");
        });
        for (const auto& f : failed) ++fails[f];
        clean += failed.empty();
    }
    std::ostringstream d;
    d << items.size() << " triples, " << clean << " without violations; violations:";
    for (const auto& n : names) d << " " << n << "=" << fails[n];
    return {clean == items.size(), d.str()};
}

Outcome oracle_cross_checks() {
    std::vector<oracle::IMatrix> inputs{{{1}}, kHex3, kK3};
    for (const auto& c : corpus(100, 777)) inputs.push_back(c.rows);
    std::size_t count_bad = 0, xc_total = 0, xc_bad = 0, non_principal = 0;
    std::mt19937_64 rng(8);
    for (const auto& rows : inputs) {
        auto a = oracle::to_arrangement(rows);
        auto m = enumerate_covectors(a);
        std::map<ElementSet, std::size_t> flat_by_flat;
        for (const auto& v : m.covectors()) ++flat_by_flat[v.zero_set()];
        count_bad += flat_by_flat != covector_counts_by_sweep(a, build_lattice(a));
        SignVector b = m.topes()[rng() % m.topes().size()];
        TopeOrder ext = lex_extension(m, b, generate_cut_ordering(m, b));
        for (const auto& c : ext) {
            ++xc_total;
            std::optional<ElementSet> x, y;
            try {
                x = compute_xc(m, ext, c);
            } catch (const TheoremViolation&) {
            }
            try {
                y = xc_by_conditions(m, ext, c);
            } catch (const TheoremViolation&) {
            }
            non_principal += !x;
            xc_bad += x != y;
        }
    }
    std::ostringstream d;
    d << inputs.size() << " arrangements: covector count mismatches " << count_bad << "; X_C disagreements " << xc_bad
      << " of " << xc_total << " chambers (" << non_principal << " without X_C, rejected by both)";
    return {count_bad == 0 && xc_bad == 0, d.str()};
}

struct Criterion {
    int id;
    const char* name;
    double seconds;
    Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::string(argv[1]) == "--only") only = std::atoi(argv[2]);
    const Criterion all[] = {
        {1, "hexagon shelling-type ordering and matching", 1, hexagon_shelling},
        {2, "lex extension sigma sequence on hex3", 1, lex_sigma},
        {3, "single critical cell for linear extensions", 30, single_critical},
        {4, "Salvetti pipeline on hex3", 5, salvetti_hex3},
        {5, "nbc identities", 5, nbc_identities},
        {6, "theorem checks on random inputs", 300, theorem_checks},
        {7, "oracle cross-checks", 300, oracle_cross_checks},
    };
    const std::set<int> known_failures{6};
    bool unexpected = false, any_fail = false;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && secs < c.seconds;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << secs << " s)";
        if (!pass && known_failures.count(c.id)) line << " [known failure, see README]";
        std::cout << line.str() << std::endl;
        any_fail |= !pass;
        unexpected |= !pass && !known_failures.count(c.id);
    }
    if (only) return any_fail ? 1 : 0;
    return unexpected ? 1 : 0;
}
