#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "omorse/error.hpp"
#include "omorse/nbc.hpp"
#include "oracles.hpp"

using namespace omorse;

namespace {

std::vector<ElementSet> sorted(std::vector<ElementSet> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<ElementSet> along_lex(const Arrangement& a, const EtaTable& t) {
    auto m = enumerate_covectors(a);
    std::vector<ElementSet> out;
    for (const auto& c : lex_extension(m, t.base, t.ordering)) out.push_back(t.of(c));
    return out;
}

// 1-based hyperplane lists as written in the text.
std::vector<ElementSet> one_based(std::initializer_list<std::vector<int>> sets) {
    std::vector<ElementSet> out;
    for (const auto& s : sets) {
        ElementSet e = 0;
        for (int h : s) e |= singleton(static_cast<std::size_t>(h - 1));
        out.push_back(e);
    }
    return out;
}

}  // namespace

TEST_CASE("circuits and nbc sets of the fixtures") {
    auto h = oracle::to_arrangement(kHex3);
    CHECK(circuits(h) == std::vector<ElementSet>{0b111});
    CHECK(circuits(oracle::to_arrangement(kK3)).empty());
    CHECK(sorted(nbc_complex(h, {0, 1, 2})) == sorted(one_based({{}, {1}, {2}, {3}, {1, 2}, {1, 3}})));
    CHECK(nbc_complex(oracle::to_arrangement(kK3), {0, 1, 2}).size() == 8);
    CHECK(nbc_complex(oracle::to_arrangement(kLine1), {0}) == std::vector<ElementSet>{0, 1});
    // The broken circuit drops the first element of the ordering, not the smallest index.
    CHECK(sorted(nbc_complex(h, {2, 0, 1})) == sorted(one_based({{}, {1}, {2}, {3}, {3, 1}, {3, 2}})));
}

TEST_CASE("circuits and nbc sets against the reference on random arrangements") {
    gen::Arrangements g(53);
    for (int it = 0; it < 60; ++it) {
        auto rows = g.any(1, 6, 3, 4);
        auto a = oracle::to_arrangement(rows);
        auto m = enumerate_covectors(a);
        CHECK(sorted(circuits(a)) == sorted(circuits(m)));
        std::vector<int> ord = identity_ordering(rows.size());
        std::shuffle(ord.begin(), ord.end(), g.rng());
        auto mine = sorted(nbc_complex(a, ord));
        CHECK(mine == sorted(oracle::nbc(rows, ord)));
        CHECK(mine.size() == m.topes().size());
        auto p = oracle::poincare(rows);
        std::vector<long long> prof(p.size(), 0);
        for (ElementSet s : mine) ++prof[static_cast<std::size_t>(popcount(s))];
        CHECK(prof == p);
    }
}

TEST_CASE("eta on the triangle") {
    auto a = oracle::to_arrangement(kHex3);
    EtaTable t = eta(a, SignVector::parse("+++"), {0, 1, 2});
    auto seq = along_lex(a, t);
    CHECK(seq == one_based({{}, {3}, {2}, {1}, {1, 2}, {1, 3}}));
    std::vector<int> sizes;
    for (ElementSet s : seq) sizes.push_back(popcount(s));
    CHECK(sizes == std::vector<int>{0, 1, 1, 1, 2, 2});
    CHECK(oracle::relabel_equivalent(seq, one_based({{}, {3}, {2}, {1}, {1, 2}, {1, 3}}), 3));
    CHECK(sorted(seq) == sorted(oracle::nbc(kHex3, {0, 1, 2})));
}

TEST_CASE("eta on the coordinate arrangement induces the listed nbc order") {
    auto a = oracle::to_arrangement(kK3);
    EtaTable t = eta(a, SignVector::parse("+++"), {0, 1, 2});
    auto seq = along_lex(a, t);
    auto listed = one_based({{}, {3}, {2}, {2, 3}, {1}, {1, 3}, {1, 2}, {1, 2, 3}});
    CHECK(oracle::relabel_equivalent(seq, listed, 3));
    for (const auto& [c, e] : t.eta) CHECK(e == separation_set(t.base, c));
}

TEST_CASE("eta on a single line") {
    auto a = oracle::to_arrangement(kLine1);
    EtaTable t = eta(a, SignVector::parse("+"), {0});
    CHECK(t.of(SignVector::parse("+")) == 0);
    CHECK(t.of(SignVector::parse("-")) == 1);
    CHECK(verify_restriction_lemma(a, SignVector::parse("+"), {0}).ok);
    CHECK(verify_restriction_lemma(a, SignVector::parse("+"), {0}).checked == 0);
    auto cells = critical_cells_via_nbc(a, SignVector::parse("+"), {0});
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].label() == "+|+");
    CHECK(cells[1].label() == "0|-");
}

TEST_CASE("eta needs the cut property") {
    auto a = oracle::to_arrangement(kHex3);
    CHECK_THROWS_AS(eta(a, SignVector::parse("+++"), {0, 2, 1}), DomainError);
    CHECK_THROWS_AS(eta(a, SignVector::parse("+++"), {0, 1, 2}).of(SignVector::parse("+-+")), DomainError);
}

TEST_CASE("eta is a bijection onto nbc sets on random cut orderings") {
    gen::Arrangements g(59);
    int done = 0, stopped = 0;
    for (int it = 0; it < 150; ++it) {
        auto rows = g.any(1, 5, 3, 4);
        auto a = oracle::to_arrangement(rows);
        auto m = enumerate_covectors(a);
        SignVector b = g.pick(m.topes());
        auto ord = generate_cut_ordering(m, b);
        try {
            EtaTable t = eta(a, b, ord);
            CHECK(t.of(b) == 0);
            std::vector<ElementSet> img;
            for (const auto& kv : t.eta) img.push_back(kv.second);
            CHECK(t.eta.size() == m.topes().size());
            CHECK(sorted(img) == sorted(oracle::nbc(rows, ord)));
            for (const auto& [c, e] : t.eta) CHECK(is_subset(e, separation_set(b, c)));
            ++done;
        } catch (const TheoremViolation& e) {
            CHECK(e.check() == "cut_restriction");
            CHECK(rows[0].size() == 3);
            ++stopped;
        }
    }
    MESSAGE("bijection checked " << done << " times, stopped at a non-wall " << stopped << " times");
    CHECK(done > 100);
}

TEST_CASE("a cut ordering whose restriction loses the cut property") {
    auto a = oracle::to_arrangement({{2, -1, 0}, {1, -1, 0}, {1, -2, -2}, {1, -1, -2}});
    SignVector b = SignVector::parse("+-++");
    std::vector<int> ord{0, 1, 3, 2};
    REQUIRE(cut_property_check(a, b, ord).ok);
    Restriction r = restriction(a, singleton(2));
    CHECK(r.labels == std::vector<int>{0, 1, 3});
    CHECK_FALSE(cut_property_check(r.arrangement, SignVector::parse("+-+"), {0, 1, 2}).ok);
    try {
        eta(a, b, ord);
        FAIL("expected a violation");
    } catch (const TheoremViolation& e) {
        CHECK(e.check() == "cut_restriction");
    }
}

TEST_CASE("restriction lemma") {
    auto h = oracle::to_arrangement(kHex3);
    RestrictionCheck rh = verify_restriction_lemma(h, SignVector::parse("+++"), {0, 1, 2});
    CHECK(rh.ok);
    CHECK(rh.checked >= 2);
    RestrictionCheck rk = verify_restriction_lemma(oracle::to_arrangement(kK3), SignVector::parse("+++"), {0, 1, 2});
    CHECK(rk.ok);
    CHECK(rk.checked >= 4);
}

TEST_CASE("restriction lemma fails on generic planes in space") {
    // A'-chamber +++ is cut by H4; eta' = {H2,H3} meets H4 in the origin, eta'' = {H2} in a line.
    auto a = oracle::to_arrangement({{-2, 0, 0}, {2, -2, 2}, {-2, 0, 1}, {0, -1, -2}});
    SignVector b = SignVector::parse("+--+");
    REQUIRE(cut_property_check(a, b, {0, 1, 2, 3}).ok);
    RestrictionCheck rc = verify_restriction_lemma(a, b, {0, 1, 2, 3});
    CHECK_FALSE(rc.ok);
    CHECK(rc.witness.find("+++") != std::string::npos);
    CHECK(rc.witness.find("{1,2}") != std::string::npos);
}

TEST_CASE("flat of eta equals X_C on the fixtures") {
    for (const auto& [rows, base] : {std::pair{kHex3, "+++"}, std::pair{kK3, "+++"}, std::pair{kLine1, "+"}}) {
        auto a = oracle::to_arrangement(rows);
        auto ord = identity_ordering(rows.size());
        auto report = verify_corresp(a, SignVector::parse(base), ord);
        auto m = enumerate_covectors(a);
        CHECK(report.size() == m.topes().size());
        auto cov = oracle::covectors_by_rays(rows, rows[0].size());
        std::vector<std::string> ext;
        for (const auto& r : report) ext.push_back(r.tope.str());
        for (const auto& r : report) {
            CHECK(r.equal);
            CHECK(r.eta_flat == oracle::closure(rows, r.eta));
            CHECK(oracle::xc(cov, ext, r.tope.str()) == std::optional<ElementSet>(r.xc));
        }
    }
}

TEST_CASE("critical cells from eta") {
    auto h = oracle::to_arrangement(kHex3);
    auto cells = critical_cells_via_nbc(h, SignVector::parse("+++"), {0, 1, 2});
    std::vector<std::string> labels;
    for (const auto& c : cells) labels.push_back(c.label());
    CHECK(labels == std::vector<std::string>{"+++|+++", "++0|++-", "+0-|+--", "0++|-++", "000|--+", "000|---"});
    auto k = critical_cells_via_nbc(oracle::to_arrangement(kK3), SignVector::parse("+++"), {0, 1, 2});
    std::vector<int> dims;
    for (const auto& c : k) dims.push_back(popcount(c.face.zero_set()));
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{0, 1, 1, 1, 2, 2, 2, 3});
}

TEST_CASE("lex extension against deletion and restriction") {
    LexCompatibility h = lex_compatibility(oracle::to_arrangement(kHex3), SignVector::parse("+++"), {0, 1, 2});
    CHECK(h.deletion);
    CHECK(h.restriction);
    LexCompatibility k = lex_compatibility(oracle::to_arrangement(kK3), SignVector::parse("+++"), {0, 1, 2});
    CHECK(k.deletion);
    CHECK(k.restriction);
    gen::Arrangements g(61);
    int del = 0, res = 0, total = 0;
    for (int it = 0; it < 40; ++it) {
        auto rows = g.any(2, 5, 3, 3);
        auto a = oracle::to_arrangement(rows);
        auto m = enumerate_covectors(a);
        SignVector b = g.pick(m.topes());
        LexCompatibility lc = lex_compatibility(a, b, generate_cut_ordering(m, b));
        del += lc.deletion;
        res += lc.restriction;
        ++total;
    }
    CHECK(del == total);
    MESSAGE("restriction-compatible: " << res << " of " << total);
}
