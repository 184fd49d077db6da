#include "omorse/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "omorse/error.hpp"
#include "omorse/nbc.hpp"
#include "omorse/zonotope.hpp"

namespace omorse {

namespace {

std::string hyperplanes(ElementSet s) {
    std::string out = "{";
    bool first = true;
    for (int e : elements_of(s)) {
        if (!first) out += ",";
        out += "H" + std::to_string(e + 1);
        first = false;
    }
    return out + "}";
}

void tally(std::vector<std::size_t>& v, int d) {
    if (d < 0) return;
    if (v.size() <= static_cast<std::size_t>(d)) v.resize(static_cast<std::size_t>(d) + 1, 0);
    ++v[static_cast<std::size_t>(d)];
}

long euler(const std::vector<std::size_t>& v) {
    long x = 0;
    for (std::size_t k = 0; k < v.size(); ++k) x += (k % 2 ? -1L : 1L) * static_cast<long>(v[k]);
    return x;
}

// Table skeleton shared by both inputs: sigma, X_C and the cell counts.
Report skeleton(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering,
                const TopeOrder& ext, const SalvettiComplex& s) {
    Report r;
    r.base = base;
    r.ordering = ordering;
    for (std::size_t i = 0; i < s.cells.size(); ++i) tally(r.summary.cells, s.dim[i]);
    for (const auto& c : ext) {
        ReportRow row;
        row.chamber = c;
        row.sigma = sigma(c, base, ordering);
        try {
            row.xc = compute_xc(m, ext, c);
        } catch (const TheoremViolation& e) {
            r.notes.push_back(e.what());
        }
        r.rows.push_back(row);
    }
    return r;
}

void finish(Report& r) {
    for (const auto& row : r.rows)
        if (row.critical) tally(r.summary.critical, row.dim);
    r.summary.euler_cells = euler(r.summary.cells);
    r.summary.euler_critical = euler(r.summary.critical);
}

}  // namespace

Report make_report(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering) {
    a.validate();
    OrientedMatroid m = enumerate_covectors(a);
    TopeOrder ext = lex_extension(m, base, ordering);
    SalvettiComplex s = build_salvetti(m);
    Report r = skeleton(m, base, ordering, ext, s);
    try {
        EtaTable t = eta(a, base, ordering);
        for (auto& row : r.rows) {
            row.eta = t.of(row.chamber);
            row.dim = popcount(*row.eta);
            try {
                row.critical = SalvettiCell{distinguished_face(m, row.chamber, closure(a, *row.eta)), row.chamber};
            } catch (const TheoremViolation& e) {
                r.notes.push_back(e.what());
            }
        }
    } catch (const TheoremViolation& e) {
        r.notes.push_back(e.what());
    }
    finish(r);
    return r;
}

Report make_report(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering) {
    TopeOrder ext = lex_extension(m, base, ordering);
    SalvettiComplex s = build_salvetti(m);
    Report r = skeleton(m, base, ordering, ext, s);
    try {
        Stratification st = stratify(m, s, ext);
        SalvettiMatching sm = patchwork_matching(m, s, st);
        for (std::size_t i = 0; i < sm.critical.size(); ++i) {
            const auto& cell = s.cells[static_cast<std::size_t>(sm.critical[i].element)];
            auto it = std::find_if(r.rows.begin(), r.rows.end(),
                                   [&](const ReportRow& row) { return row.chamber == cell.tope; });
            it->critical = cell;
            it->dim = sm.critical[i].dim;
        }
    } catch (const TheoremViolation& e) {
        r.notes.push_back(e.what());
    }
    finish(r);
    return r;
}

std::string report_text(const Report& r) {
    std::vector<std::vector<std::string>> table{{"chamber", "sigma", "eta", "X_C", "critical", "dim"}};
    for (const auto& row : r.rows) {
        std::string sg;
        for (int b : row.sigma) sg += static_cast<char>('0' + b);
        table.push_back({row.chamber.str(), sg, row.eta ? hyperplanes(*row.eta) : "-",
                         row.xc ? hyperplanes(*row.xc) : "?", row.critical ? "<" + row.critical->label() + ">" : "?",
                         row.critical ? std::to_string(row.dim) : "?"});
    }
    std::vector<std::size_t> width(table[0].size(), 0);
    for (const auto& line : table)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream out;
    out << "base " << r.base.str() << "  order";
    for (int h : r.ordering) out << " H" << h + 1;
    out << "\n";
    for (const auto& line : table) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(width[i])) << line[i];
            out << (i + 1 < line.size() ? "  " : "\n");
        }
    }
    auto per_dim = [&](const char* name, const std::vector<std::size_t>& v, long chi) {
        out << name;
        for (std::size_t k = 0; k < v.size(); ++k) out << "  d" << k << "=" << v[k];
        out << "  chi=" << chi << "\n";
    };
    per_dim("cells   ", r.summary.cells, r.summary.euler_cells);
    per_dim("critical", r.summary.critical, r.summary.euler_critical);
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    return out.str();
}

std::string report_json(const Report& r) {
    nlohmann::json j;
    j["base"] = r.base.str();
    j["ordering"] = r.ordering;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json x;
        x["chamber"] = row.chamber.str();
        x["sigma"] = row.sigma;
        x["eta"] = row.eta ? nlohmann::json(elements_of(*row.eta)) : nlohmann::json(nullptr);
        x["xc"] = row.xc ? nlohmann::json(elements_of(*row.xc)) : nlohmann::json(nullptr);
        if (row.critical) {
            x["critical"] = {{"face", row.critical->face.str()}, {"tope", row.critical->tope.str()}};
            x["dim"] = row.dim;
        } else {
            x["critical"] = nullptr;
            x["dim"] = nullptr;
        }
        j["rows"].push_back(x);
    }
    j["summary"] = {{"cells", r.summary.cells},
                    {"critical", r.summary.critical},
                    {"euler_cells", r.summary.euler_cells},
                    {"euler_critical", r.summary.euler_critical}};
    j["notes"] = r.notes;
    return j.dump(2);
}

}  // namespace omorse
