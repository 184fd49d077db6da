#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "omorse/arrangement.hpp"
#include "omorse/error.hpp"
#include "omorse/limits.hpp"
#include "omorse/nbc.hpp"
#include "omorse/oriented_matroid.hpp"
#include "omorse/poset.hpp"
#include "omorse/report.hpp"
#include "omorse/salvetti.hpp"
#include "omorse/shelling.hpp"
#include "omorse/zonotope.hpp"

namespace omorse::cli {

namespace {

using nlohmann::json;

constexpr const char* kGrammars = R"(File formats ('#' starts a comment everywhere):
  arrangement   first line "n d", then n rows of d rationals (integers or p/q)
  covectors     one sign vector per line over + - 0, e.g. +0-
  poset         one cover per line, "p > q" means q is covered by p
  extension     one tope per line, smallest first, listing every tope once
Hyperplanes are numbered from 0 in --order and from 1 (H1, H2, ...) in reports.
Exit codes: 0 ok, 1 input or validation error, 2 theorem violation, 3 limit exceeded.)";

struct RunConfig {
    std::string command;
    std::string arrangement;
    std::string covectors;
    std::string poset;
    std::string top_order;
    std::string base;
    std::string extension = "lex";
    std::string order;
    std::string format = "text";
    bool unsafe_limits = false;
    bool match_bottom = false;
    std::uint64_t seed = 1;
    std::size_t n = 4;
    std::size_t d = 3;
    int bound = 4;
};

struct Input {
    std::optional<Arrangement> arrangement;
    OrientedMatroid m;
};

Limits limits_of(const RunConfig& c) { return c.unsafe_limits ? Limits::unsafe() : Limits{}; }

Input load_input(const RunConfig& c) {
    if (c.arrangement.empty() == c.covectors.empty())
        throw InputError("give exactly one of --arrangement and --covectors");
    Input in;
    Limits lim = limits_of(c);
    if (!c.arrangement.empty()) {
        Arrangement a = Arrangement::load(c.arrangement);
        a.check_limits(lim);
        a.validate();
        in.m = enumerate_covectors(a);
        in.arrangement = std::move(a);
    } else {
        in.m = OrientedMatroid::load(c.covectors);
        if (in.m.ground_size() > lim.max_n)
            throw LimitExceeded(std::to_string(in.m.ground_size()) + " elements exceed the limit of " +
                                std::to_string(lim.max_n));
        if (static_cast<std::size_t>(in.m.rank()) > lim.max_d)
            throw LimitExceeded("rank " + std::to_string(in.m.rank()) + " exceeds the limit of " +
                                std::to_string(lim.max_d));
    }
    return in;
}

SignVector parse_base(const RunConfig& c, const OrientedMatroid& m) {
    if (c.base.empty()) throw InputError("--base is required for this command");
    SignVector b = SignVector::parse(c.base);
    if (b.size() != m.ground_size())
        throw DimensionError("base " + c.base + " has " + std::to_string(b.size()) + " signs, expected " +
                             std::to_string(m.ground_size()));
    if (!m.is_tope(b)) throw DomainError("base " + c.base + " is not a tope");
    return b;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_order(const RunConfig& c, const OrientedMatroid& m, const SignVector& base) {
    const std::size_t n = m.ground_size();
    if (c.order.empty()) return identity_ordering(n);
    if (c.order == "cut-auto") return generate_cut_ordering(m, base);
    std::vector<int> out;
    for (const auto& tok : split(c.order, ',')) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw InputError("bad hyperplane index '" + tok + "' in --order");
        out.push_back(v);
    }
    std::vector<int> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_ordering(n))
        throw DomainError("--order must be a permutation of 0.." + std::to_string(n - 1));
    return out;
}

TopeOrder parse_ext(const RunConfig& c, const OrientedMatroid& m, const SignVector& base,
                    const std::vector<int>& ordering) {
    if (c.extension == "lex") return lex_extension(m, base, ordering);
    if (c.extension.rfind("file:", 0) == 0) {
        std::string path = c.extension.substr(5);
        std::ifstream f(path);
        if (!f) throw InputError("cannot open " + path);
        return parse_extension(f, tope_poset(m, base));
    }
    throw InputError("--extension must be lex or file:<path>");
}

std::string sets_text(const std::vector<ElementSet>& v) {
    std::string out;
    for (ElementSet s : v) out += (out.empty() ? "" : " ") + format_set(s);
    return out;
}

json sets_json(const std::vector<ElementSet>& v) {
    json j = json::array();
    for (ElementSet s : v) j.push_back(elements_of(s));
    return j;
}

void critical_text(std::ostream& out, const FinitePoset& p, const std::vector<CriticalCell>& cc) {
    out << "critical cells: " << cc.size() << "\n";
    for (const auto& c : cc) out << "  " << p.label(c.element) << "  dim " << c.dim << "\n";
}

json critical_json(const FinitePoset& p, const std::vector<CriticalCell>& cc) {
    json j = json::array();
    for (const auto& c : cc) j.push_back({{"cell", p.label(c.element)}, {"dim", c.dim}});
    return j;
}

// Poset input for shell and match.
struct PosetRun {
    FinitePoset p;
    ShellingTypeOrdering s;
};

PosetRun poset_shelling(const RunConfig& c) {
    PosetRun r{FinitePoset::load(c.poset), {}};
    r.p.validate();
    LinearOrder top;
    if (c.top_order.empty()) {
        top = r.p.maximal();
    } else {
        for (const auto& l : split(c.top_order, ',')) top.push_back(r.p.index_of(l));
    }
    CanonicalOracle oracle(r.p);
    r.s = build_shelling_type_ordering(r.p, top, oracle);
    return r;
}

int cmd_build(const RunConfig& c, std::ostream& out) {
    Input in = load_input(c);
    if (c.format == "json") {
        json j;
        j["covectors"] = json::parse(covectors_json(in.m));
        if (in.arrangement) j["lattice"] = json::parse(lattice_json(build_lattice(*in.arrangement)));
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "elements " << in.m.ground_size() << "  rank " << in.m.rank() << "  flats " << in.m.flats().size()
        << "  covectors " << in.m.size() << "  topes " << in.m.topes().size() << "\n";
    std::map<int, std::size_t> by_rank;
    for (const auto& v : in.m.covectors()) ++by_rank[in.m.rank() - in.m.height(v)];
    out << "covectors by rank of zero set:";
    for (const auto& [k, v] : by_rank) out << "  " << k << ":" << v;
    out << "\n";
    return 0;
}

int cmd_shell(const RunConfig& c, std::ostream& out) {
    if (!c.poset.empty()) {
        PosetRun r = poset_shelling(c);
        if (c.format == "json") {
            out << ordering_json(r.p, r.s) << "\n";
        } else {
            for (std::size_t i = 0; i < r.s.global.size(); ++i)
                out << (i ? " " : "") << r.p.label(r.s.global[i]);
            out << "\n";
        }
        return 0;
    }
    Input in = load_input(c);
    SignVector b = parse_base(c, in.m);
    FaceMatching fm = face_poset_matching(in.m, b, parse_ext(c, in.m, b, parse_order(c, in.m, b)));
    if (c.format == "json") {
        out << ordering_json(fm.faces.poset, fm.ordering) << "\n";
    } else {
        for (std::size_t i = 0; i < fm.ordering.global.size(); ++i)
            out << (i ? " " : "") << fm.faces.poset.label(fm.ordering.global[i]);
        out << "\n";
    }
    return 0;
}

int cmd_match(const RunConfig& c, std::ostream& out) {
    const FinitePoset* p = nullptr;
    Matching m;
    std::vector<CriticalCell> cc;
    PosetRun r;
    FaceMatching fm;
    if (!c.poset.empty()) {
        r = poset_shelling(c);
        p = &r.p;
        m = matching_from_ordering(r.p, r.s, c.match_bottom);
        AcyclicityResult ac = is_acyclic(m, r.p);
        if (!ac.acyclic) throw TheoremViolation("acyclic", "matching from the shelling-type ordering has a cycle");
        cc = critical_cells(r.p, m);
    } else {
        Input in = load_input(c);
        SignVector b = parse_base(c, in.m);
        fm = face_poset_matching(in.m, b, parse_ext(c, in.m, b, parse_order(c, in.m, b)));
        p = &fm.faces.poset;
        m = fm.matching;
        cc = fm.critical;
    }
    if (c.format == "json") {
        json j = json::parse(matching_json(m, *p));
        j["critical_cells"] = critical_json(*p, cc);
        out << j.dump(2) << "\n";
    } else {
        out << "pairs: " << m.pairs().size() << "\n";
        for (const auto& [u, l] : m.pairs()) out << "  " << p->label(l) << " < " << p->label(u) << "\n";
        critical_text(out, *p, cc);
    }
    return 0;
}

int cmd_salvetti(const RunConfig& c, std::ostream& out) {
    Input in = load_input(c);
    SignVector b = parse_base(c, in.m);
    TopeOrder ext = parse_ext(c, in.m, b, parse_order(c, in.m, b));
    SalvettiComplex s = build_salvetti(in.m);
    Stratification st = stratify(in.m, s, ext);
    SalvettiMatching sm = patchwork_matching(in.m, s, st);
    if (c.format == "json") {
        out << salvetti_json(s, &st, &sm) << "\n";
        return 0;
    }
    std::map<int, std::size_t> per_dim;
    for (int d : s.dim) ++per_dim[d];
    out << "cells " << s.cell_count() << " :";
    for (const auto& [d, k] : per_dim) out << "  d" << d << "=" << k;
    out << "\nstrata " << st.strata.size() << "\n";
    for (const auto& x : st.strata)
        out << "  " << x.tope.str() << "  X_C " << format_set(x.flat) << "  codim " << x.codim << "  cells "
            << x.cells.size() << "\n";
    critical_text(out, s.poset, sm.critical);
    return 0;
}

int cmd_nbc(const RunConfig& c, std::ostream& out) {
    Input in = load_input(c);
    std::vector<int> ordering;
    std::optional<SignVector> b;
    if (!c.base.empty()) {
        b = parse_base(c, in.m);
        ordering = parse_order(c, in.m, *b);
    } else {
        if (c.order == "cut-auto") throw InputError("--order cut-auto needs --base");
        ordering = parse_order(c, in.m, SignVector(in.m.ground_size()));
    }
    std::vector<ElementSet> circs = in.arrangement ? circuits(*in.arrangement) : circuits(in.m);
    std::vector<ElementSet> nbc = nbc_sets(circs, in.m.ground_size(), ordering);
    std::optional<EtaTable> t;
    TopeOrder ext;
    if (b && in.arrangement) {
        t = eta(*in.arrangement, *b, ordering);
        ext = lex_extension(in.m, *b, ordering);
    }
    if (c.format == "json") {
        json j;
        j["ordering"] = ordering;
        j["circuits"] = sets_json(circs);
        j["nbc"] = sets_json(nbc);
        if (t) {
            j["eta"] = json::array();
            for (const auto& ch : ext) j["eta"].push_back({{"chamber", ch.str()}, {"set", elements_of(t->of(ch))}});
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "circuits: " << sets_text(circs) << "\nnbc (" << nbc.size() << "): " << sets_text(nbc) << "\n";
    if (t) {
        out << "eta along the lex extension:\n";
        for (const auto& ch : ext) out << "  " << ch.str() << "  " << format_set(t->of(ch)) << "\n";
    }
    return 0;
}

struct CheckResult {
    std::string name;
    std::string status;  // pass, fail, skipped
    std::string violation;
    std::string witness;
};

CheckResult run_check(const std::string& name, const std::function<void()>& f) {
    CheckResult r{name, "pass", "", ""};
    try {
        f();
    } catch (const TheoremViolation& e) {
        r.status = "fail";
        r.violation = e.check();
        r.witness = e.witness();
    }
    return r;
}

int cmd_verify_all(const RunConfig& c, std::ostream& out) {
    Input in = load_input(c);
    SignVector b = parse_base(c, in.m);
    std::vector<int> ordering = parse_order(c, in.m, b);
    TopeOrder ext = parse_ext(c, in.m, b, ordering);
    if (in.arrangement) {
        CutCheck cc = cut_property_check(*in.arrangement, b, ordering);
        if (!cc.ok)
            throw DomainError("ordering lacks the cut property at position " + std::to_string(cc.failing_position) +
                              "; try --order cut-auto");
    }
    std::vector<CheckResult> results;
    results.push_back(run_check("linext_acmatch", [&] { face_poset_matching(in.m, b, ext, true); }));
    std::vector<std::optional<ElementSet>> xc(ext.size());
    results.push_back(run_check("propJc", [&] {
        for (std::size_t i = 0; i < ext.size(); ++i) xc[i] = compute_xc(in.m, ext, ext[i]);
    }));
    results.push_back(run_check("tec_lm", [&] {
        for (std::size_t i = 0; i < ext.size(); ++i)
            if (xc[i] && xc_by_conditions(in.m, ext, ext[i]) != *xc[i])
                throw TheoremViolation("tec_lm", ext[i].str() + ": conditions select a different flat");
    }));
    results.push_back(run_check("ciliegina", [&] {
        for (std::size_t i = 0; i < ext.size(); ++i)
            if (xc[i]) distinguished_face(in.m, ext[i], *xc[i]);
    }));
    SalvettiComplex s = build_salvetti(in.m);
    std::optional<Stratification> st;
    results.push_back(run_check("contr", [&] { st = stratify(in.m, s, ext, true); }));
    results.push_back(run_check("maxmat", [&] {
        if (!st) st = stratify(in.m, s, ext, false);
        patchwork_matching(in.m, s, *st);
    }));
    if (in.arrangement) {
        const Arrangement& a = *in.arrangement;
        results.push_back(run_check("jobij", [&] { eta(a, b, ordering); }));
        results.push_back(run_check("inters_nbc", [&] {
            RestrictionCheck rc = verify_restriction_lemma(a, b, ordering);
            if (!rc.ok) throw TheoremViolation("inters_nbc", rc.witness);
        }));
        results.push_back(run_check("corresp", [&] { verify_corresp(a, b, ordering); }));
        results.push_back(run_check("result", [&] { critical_cells_via_nbc(a, b, ordering); }));
    } else {
        for (const char* n : {"jobij", "inters_nbc", "corresp", "result"})
            results.push_back({n, "skipped", "", "needs an arrangement"});
    }
    bool ok = std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == "fail"; });
    if (c.format == "json") {
        json j;
        j["ok"] = ok;
        j["checks"] = json::array();
        for (const auto& r : results) {
            json x{{"check", r.name}, {"status", r.status}};
            if (!r.violation.empty()) x["violation"] = r.violation;
            if (!r.witness.empty()) x["witness"] = r.witness;
            j["checks"].push_back(x);
        }
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << r.name << ": " << r.status;
            if (r.status == "fail") out << " [" << r.violation << "] " << r.witness;
            out << "\n";
        }
    }
    return ok ? 0 : 2;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
    if (c.extension != "lex") throw InputError("report is built on the lex extension; drop --extension");
    Input in = load_input(c);
    SignVector b = parse_base(c, in.m);
    std::vector<int> ordering = parse_order(c, in.m, b);
    Report r = in.arrangement ? make_report(*in.arrangement, b, ordering) : make_report(in.m, b, ordering);
    out << (c.format == "json" ? report_json(r) + "\n" : report_text(r));
    return 0;
}

int cmd_random(const RunConfig& c, std::ostream& out) {
    Limits lim = limits_of(c);
    if (c.n > lim.max_n || c.d > lim.max_d) throw LimitExceeded("requested size exceeds the configured limits");
    std::mt19937_64 rng(c.seed);
    Arrangement a = random_arrangement(c.n, c.d, c.bound, rng);
    OrientedMatroid m = enumerate_covectors(a);
    const auto& topes = m.topes();
    SignVector b = topes[std::uniform_int_distribution<std::size_t>(0, topes.size() - 1)(rng)];
    std::vector<int> ord = generate_cut_ordering(m, b);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : a.normals()) {
            json row = json::array();
            for (const auto& x : r) row.push_back(x.str());
            rows.push_back(row);
        }
        out << json{{"dim", a.dim()}, {"normals", rows}, {"base", b.str()}, {"order", ord}, {"seed", c.seed}}.dump(2)
            << "\n";
        return 0;
    }
    out << "# seed " << c.seed << "\n# base " << b.str() << "\n# order";
    for (std::size_t i = 0; i < ord.size(); ++i) out << (i ? "," : " ") << ord[i];
    out << "\n" << a.str();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Discrete Morse theory on oriented matroids and Salvetti complexes"};
    app.footer(kGrammars);
    app.require_subcommand(1);

    auto input_opts = [&](CLI::App* sub, bool poset) {
        sub->add_option("--arrangement", c.arrangement, "Arrangement file");
        sub->add_option("--covectors", c.covectors, "Covector file");
        if (poset) {
            sub->add_option("--poset", c.poset, "Poset file");
            sub->add_option("--top-order", c.top_order, "Comma-separated order of the maximal elements");
        }
    };
    auto geometry_opts = [&](CLI::App* sub) {
        sub->add_option("--base", c.base, "Base tope as a sign string");
        sub->add_option("--order", c.order, "Hyperplane order: comma-separated 0-based indices, or cut-auto");
        sub->add_option("--extension", c.extension, "Linear extension of the tope poset: lex or file:<path>");
    };
    auto common_opts = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--unsafe-limits", c.unsafe_limits, "Raise the size limits from n<=12, d<=6 to n<=16, d<=8");
    };

    struct Cmd {
        const char* name;
        const char* help;
        bool poset;
        bool geometry;
        int (*fn)(const RunConfig&, std::ostream&);
    };
    const Cmd cmds[] = {
        {"build", "Validate the input and enumerate covectors and flats", false, false, cmd_build},
        {"shell", "Shelling-type ordering of a poset or of the face poset", true, true, cmd_shell},
        {"match", "Acyclic matching from the shelling-type ordering", true, true, cmd_match},
        {"salvetti", "Salvetti complex, its stratification and the pasted matching", false, true, cmd_salvetti},
        {"nbc", "Circuits, nbc sets and the chamber bijection", false, true, cmd_nbc},
        {"verify-all", "Run every theorem check; exit 2 on a violation", false, true, cmd_verify_all},
        {"report", "Chamber table and Morse summary", false, true, cmd_report},
    };
    std::map<CLI::App*, int (*)(const RunConfig&, std::ostream&)> dispatch;
    for (const auto& cmd : cmds) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        input_opts(sub, cmd.poset);
        if (cmd.geometry) geometry_opts(sub);
        common_opts(sub);
        if (std::string(cmd.name) == "match")
            sub->add_flag("--match-bottom", c.match_bottom, "Also match the minimum of a poset input");
        dispatch[sub] = cmd.fn;
    }
    CLI::App* rnd = app.add_subcommand("random", "Random simple essential arrangement with a base and cut order");
    rnd->add_option("--n", c.n, "Number of hyperplanes");
    rnd->add_option("--d", c.d, "Dimension");
    rnd->add_option("--bound", c.bound, "Entries are drawn from [-bound, bound]")->check(CLI::Range(1, 1000));
    rnd->add_option("--seed", c.seed, "Random seed");
    common_opts(rnd);
    dispatch[rnd] = cmd_random;

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    bool json_out = c.format == "json";
    try {
        for (const auto& [sub, fn] : dispatch)
            if (sub->parsed()) return fn(c, out);
        return 1;
    } catch (const TheoremViolation& e) {
        if (json_out) out << json{{"error", "theorem-violation"}, {"check", e.check()}, {"witness", e.witness()}}.dump(2) << "\n";
        err << "theorem violation [" << e.check() << "]: " << e.witness() << "\n";
        return 2;
    } catch (const LimitExceeded& e) {
        err << "limit exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace omorse::cli
