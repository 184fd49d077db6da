#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omorse/arrangement.hpp"
#include "omorse/oriented_matroid.hpp"
#include "omorse/salvetti.hpp"

namespace omorse {

struct ReportRow {
    SignVector chamber;
    std::vector<int> sigma;
    std::optional<ElementSet> eta;       // arrangement input only
    std::optional<ElementSet> xc;        // unset when J(C) is not principal
    std::optional<SalvettiCell> critical;
    int dim = 0;
};

struct MorseSummary {
    std::vector<std::size_t> cells;     // Salvetti cells per dimension
    std::vector<std::size_t> critical;  // critical cells per dimension
    long euler_cells = 0;
    long euler_critical = 0;
};

struct Report {
    SignVector base;
    std::vector<int> ordering;
    std::vector<ReportRow> rows;  // lex order
    MorseSummary summary;
    std::vector<std::string> notes;  // theorem checks that failed while filling the table
};

// Chamber table along the lex extension. With an arrangement the critical
// cell of C is <F, C> with F = C zeroed on the flat of eta(C); with only
// covectors it is read off the stratum matching. Never throws
// TheoremViolation: failures are collected in `notes`.
Report make_report(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering);
Report make_report(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering);

std::string report_text(const Report& r);
std::string report_json(const Report& r);

}  // namespace omorse
