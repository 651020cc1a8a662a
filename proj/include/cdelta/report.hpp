#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cdelta/lattice.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

/// Route A: chi(-s_h) - chi(s_{-h}).
Int delta_chi(const Lattice& lat, const HElem& h);

/// Route B: the counting function at Z_K + s_h.
Int delta_count(const Lattice& lat, const HElem& h, const SeriesOptions& opt = {});

struct SurgeryDelta {
    Int node_part;   ///< Q_{[Z_K+s_h], N}(Z_K + s_h)
    Int string_part; ///< sum over strings with r_k > 0 of (r_k - 1)
    std::vector<Int> branch_counts;
    Int delta;
};

/// Node surgery formula for a rational graph with at least one node.
/// Throws NoNodes for strings.
SurgeryDelta delta_surgery(const Lattice& lat, const HElem& h, const SeriesOptions& opt = {});

struct GraphSummary {
    std::size_t vertices = 0;
    std::int64_t order = 1;
    std::vector<std::int64_t> moduli;
    std::optional<int> generator;
    Cycle z_k;
    Cycle z_min;
    bool rational = false;
    bool quotient = false;
    bool star_shaped = false;
    bool string = false;
    std::optional<std::string> seifert;
};

GraphSummary summarize(const Lattice& lat);

struct DeltaRow {
    HElem h;
    std::string class_id;
    Cycle s_h;
    std::vector<Int> s_h_estar;
    std::optional<Rat> s_h0;
    Int r;
    Int delta_chi;
    Int delta_count;
    Int delta_struct;
    std::string route;
    std::optional<int> epsilon;
    std::string rule;
    std::string curve_type;
    std::vector<std::pair<Int, Int>> n_values;
};

struct DeltaReport {
    GraphSummary summary;
    std::vector<DeltaRow> rows;
};

/// All three routes for one nonzero class; any disagreement throws
/// InternalInconsistency with the intermediate cycles in the message.
DeltaRow delta_row(const Lattice& lat, const HElem& h, const SeriesOptions& opt = {});

struct ReportOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
};

/// Rows for every nonzero class in class order. Throws NotRational.
DeltaReport full_report(const Lattice& lat, const ReportOptions& opt = {});

nlohmann::ordered_json to_json(const Cycle& c);
nlohmann::ordered_json to_json(const GraphSummary& s);
nlohmann::ordered_json to_json(const DeltaRow& row);
nlohmann::ordered_json to_json(const DeltaReport& rep);

std::string render_table(const DeltaReport& rep);
std::string render_csv(const DeltaReport& rep);

/// Space-aligned columns; the first row is the header.
std::string render_table(const std::vector<std::vector<std::string>>& cells);
std::string render_csv(const std::vector<std::vector<std::string>>& cells);

/// "(a,b,...)" of integers.
std::string tuple_string(const std::vector<Int>& v);

} // namespace cdelta
