#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "omorse/arrangement.hpp"
#include "omorse/error.hpp"
#include "oracles.hpp"

using namespace omorse;

namespace {

std::set<std::string> as_strings(const OrientedMatroid& m) {
    std::set<std::string> out;
    for (const auto& v : m.covectors()) out.insert(v.str());
    return out;
}

Arrangement parse_text(const std::string& s) {
    std::istringstream in(s);
    return Arrangement::parse(in);
}

}  // namespace

TEST_CASE("fixtures load") {
    auto h = Arrangement::load(fixture("hex3.arr"));
    CHECK(h.size() == 3);
    CHECK(h.dim() == 2);
    CHECK(h.is_simple());
    CHECK(h.is_essential());
    CHECK(Arrangement::load(fixture("line1.arr")).size() == 1);
    CHECK(Arrangement::load(fixture("k3.arr")).dim() == 3);
}

TEST_CASE("arrangement parsing rejects malformed files") {
    CHECK(parse_text("# c\n2 2\n1/2 0\n0 3\n").normal(0)[0] == Rational(1, 2));
    CHECK_THROWS_AS(parse_text("2 2\n1 0\n"), InputError);
    CHECK_THROWS_AS(parse_text("1 2\n1 0 0\n"), InputError);
    CHECK_THROWS_AS(parse_text("1 2\n0 0\n"), InputError);
    CHECK_THROWS_AS(parse_text("x 2\n1 0\n"), InputError);
    CHECK_THROWS_AS(Arrangement::load(fixture("missing.arr")), InputError);
}

TEST_CASE("validation names non-simple and non-essential inputs") {
    CHECK_THROWS_AS(oracle::to_arrangement({{1, 0}, {2, 0}}).validate(), InputError);
    CHECK_THROWS_AS(oracle::to_arrangement({{1, 0, 0}, {0, 1, 0}}).validate(), InputError);
    CHECK_NOTHROW(oracle::to_arrangement(kHex3).validate());
    CHECK_THROWS_AS(oracle::to_arrangement({{1, 0}, {0, 1}}).check_limits(Limits{1, 6}), LimitExceeded);
}

TEST_CASE("covectors of the fixtures") {
    CHECK(enumerate_covectors(oracle::to_arrangement(kLine1)).size() == 3);
    auto h = enumerate_covectors(oracle::to_arrangement(kHex3));
    CHECK(h.size() == 13);
    CHECK(h.topes().size() == 6);
    CHECK(h.rank() == 2);
    auto k = enumerate_covectors(oracle::to_arrangement(kK3));
    CHECK(k.size() == 27);
    CHECK(k.topes().size() == 8);
    CHECK(as_strings(h) == oracle::covectors_by_rays(kHex3, 2));
    CHECK(validate_axioms(h.covectors()).ok());
}

TEST_CASE("covectors agree with the ray oracle and the sweep on random arrangements") {
    gen::Arrangements g(101);
    for (int it = 0; it < 60; ++it) {
        auto rows = g.any(1, 5, 3, 4);
        auto a = oracle::to_arrangement(rows);
        auto m = enumerate_covectors(a);
        CHECK(as_strings(m) == oracle::covectors_by_rays(rows, a.dim()));
        auto sweep = sweep_covectors(a);
        CHECK(sweep.size() == m.size());
        CHECK(count_topes_by_sweep(a) == m.topes().size());
        auto lattice = build_lattice(a);
        auto counts = covector_counts_by_sweep(a, lattice);
        std::map<ElementSet, std::size_t> mine;
        for (const auto& v : m.covectors()) ++mine[v.zero_set()];
        CHECK(counts == mine);
    }
}

TEST_CASE("intersection lattice matches closures of all subsets") {
    gen::Arrangements g(5);
    for (int it = 0; it < 40; ++it) {
        auto rows = g.any(2, 5, 3, 3);
        auto l = build_lattice(oracle::to_arrangement(rows));
        std::set<ElementSet> want;
        for (ElementSet s = 0; s < (ElementSet{1} << rows.size()); ++s) want.insert(oracle::closure(rows, s));
        std::set<ElementSet> got;
        for (const auto& f : l.flats()) {
            got.insert(f.support);
            CHECK(f.codim == oracle::rank_of(rows, f.support));
        }
        CHECK(got == want);
        CHECK(l.bottom().support == 0);
        CHECK(l.rank() == static_cast<int>(rows[0].size()));
        for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = 0; j < l.size(); ++j) {
                int jn = l.join(static_cast<int>(i), static_cast<int>(j));
                CHECK(l.flats()[static_cast<std::size_t>(jn)].support ==
                      oracle::closure(rows, l.flats()[i].support | l.flats()[j].support));
            }
    }
}

TEST_CASE("lattice JSON is canonical") {
    auto a = oracle::to_arrangement(kHex3);
    CHECK(lattice_json(build_lattice(a)) == lattice_json(build_lattice(a)));
    CHECK(lattice_json(build_lattice(a)).find("\"flats\"") != std::string::npos);
}

TEST_CASE("restriction keeps the smallest label of each parallel class") {
    auto a = oracle::to_arrangement({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    auto r = restriction(a, 0b1000u);
    CHECK(r.labels == std::vector<int>{0, 1, 2});
    CHECK(r.arrangement.dim() == 2);
    auto h = restriction(oracle::to_arrangement(kHex3), 0b100u);
    CHECK(h.labels == std::vector<int>{0});
    CHECK_THROWS_AS(restriction(oracle::to_arrangement(kHex3), 0b011u), DomainError);
}

TEST_CASE("essentialize keeps the oriented matroid") {
    auto a = oracle::to_arrangement({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
    CHECK_FALSE(a.is_essential());
    auto e = essentialize(a);
    CHECK(e.dim() == 2);
    oracle::IMatrix plane{{1, 0}, {0, 1}, {1, 1}};
    CHECK(as_strings(enumerate_covectors(e)) == oracle::covectors_by_rays(plane, 2));
}

TEST_CASE("walls and feasibility") {
    auto a = oracle::to_arrangement(kHex3);
    CHECK(walls(a, SignVector::parse("+++")) == 0b101u);
    CHECK(feasible(a, SignVector::parse("000")));
    CHECK_FALSE(feasible(a, SignVector::parse("+-+")));
    CHECK(feasible_partial(a, SignVector::parse("+-0"), 0b011u));
    CHECK_THROWS_AS(walls(a, SignVector::parse("+0+")), DomainError);
    CHECK_FALSE(witness(a, SignVector::parse("+-+"), 0b111u).has_value());
    auto w = witness(a, SignVector::parse("++-"), 0b111u);
    REQUIRE(w.has_value());
    CHECK(sign(dot(a.normal(2), *w)) == -1);
}

TEST_CASE("covector files and the axioms") {
    std::istringstream broken("# no composites\n00\n+0\n-0\n0+\n0-\n");
    CHECK_THROWS_AS(OrientedMatroid::parse(broken), InputError);
    std::istringstream parallel("000\n+++\n---\n");
    CHECK(OrientedMatroid::parse(parallel).rank() == 1);
    std::stringstream full;
    auto hex = enumerate_covectors(oracle::to_arrangement(kHex3));
    for (const auto& v : hex.covectors()) full << v.str() << "\n";
    CHECK(OrientedMatroid::parse(full).size() == 13);
    std::istringstream ragged("00\n+++\n");
    CHECK_THROWS_AS(OrientedMatroid::parse(ragged), InputError);
    AxiomReport rep = validate_axioms({SignVector::parse("00"), SignVector::parse("++"), SignVector::parse("+-")});
    CHECK_FALSE(rep.negation);
    CHECK(validate_axioms(enumerate_covectors(oracle::to_arrangement(kK3)).covectors()).ok());
}

TEST_CASE("contraction and simplification") {
    auto m = enumerate_covectors(oracle::to_arrangement(kK3));
    Contraction c = contraction(m, 0b001u);
    CHECK(c.index_map == std::vector<int>{1, 2});
    CHECK(c.om.topes().size() == 4);
    CHECK(c.lift(SignVector::parse("+-"), 3).str() == "0+-");
    auto h = enumerate_covectors(oracle::to_arrangement(kHex3));
    CHECK(contraction(h, 0b111u).om.size() == 1);
    CHECK_THROWS_AS(contraction(h, 0b011u), DomainError);

    // hex3 with an extra element antiparallel to H1.
    std::vector<SignVector> cov;
    for (const auto& v : h.covectors()) {
        SignVector w(4);
        for (std::size_t i = 0; i < 3; ++i) w.set(i, v[i]);
        w.set(3, negate(v[0]));
        cov.push_back(w);
    }
    OrientedMatroid par(4, cov);
    CHECK_FALSE(par.is_simple());
    Simplification s = simplify(par);
    CHECK(s.om.ground_size() == 3);
    CHECK(s.representative == std::vector<int>{0, 1, 2});
    CHECK(s.orientation[3] == -1);
    CHECK(s.expand(SignVector::parse("+-+"), 4).str() == "+-+-");
    CHECK(s.compress(SignVector::parse("+-+-")).str() == "+-+");
}
