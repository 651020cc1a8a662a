#include "cdelta/report.hpp"

#include <exception>
#include <sstream>
#include <thread>

#include "cdelta/error.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/star.hpp"

namespace cdelta {

namespace {

void require_rational(const Lattice& lat)
{
    if (!is_rational(lat)) {
        throw NotRational("delta invariants need a rational graph");
    }
}

bool minimal_star(const DualGraph& g)
{
    if (!g.is_star_shaped()) {
        return false;
    }
    try {
        seifert_from_graph(g);
        return true;
    } catch (const NonMinimalLeg&) {
        return false;
    }
}

void require_nonzero(const Lattice& lat, const HElem& h)
{
    if (lat.group().is_zero(h)) {
        throw EmptyCurve("the class 0 carries the empty curve");
    }
}

} // namespace

Int delta_chi(const Lattice& lat, const HElem& h)
{
    require_rational(lat);
    require_nonzero(lat, h);
    const Cycle sh = minimal_class_cycle(lat, h);
    const Cycle smh = minimal_class_cycle(lat, lat.group().negate(h));
    const Rat d = lat.chi(-sh) - lat.chi(smh);
    if (!is_integral(d)) {
        throw InternalInconsistency("chi(-s_h) - chi(s_-h) = " + to_string(d) + " is not an integer");
    }
    return d.get_num();
}

Int delta_count(const Lattice& lat, const HElem& h, const SeriesOptions& opt)
{
    require_nonzero(lat, h);
    return kappa_top(lat, minimal_class_cycle(lat, h), opt);
}

SurgeryDelta delta_surgery(const Lattice& lat, const HElem& h, const SeriesOptions& opt)
{
    require_rational(lat);
    require_nonzero(lat, h);
    const auto nodes = lat.graph().nodes();
    if (nodes.empty()) {
        throw NoNodes("the node surgery formula needs a node; use the string formula");
    }
    const Cycle sh = minimal_class_cycle(lat, h);
    const Cycle x = lat.canonical_cycle() + sh;
    SurgeryDelta out;
    out.node_part = counting_Q_I(lat, lat.class_of(x), nodes, x, opt);
    out.string_part = 0;
    const auto a = lat.estar_coords(sh);
    for (const auto& comp : components_minus(lat.graph(), nodes)) {
        Int rk = 0;
        for (int v : comp.to_parent) {
            rk += a[v];
        }
        out.branch_counts.push_back(rk);
        if (rk > 0) {
            out.string_part += rk - 1;
        }
    }
    out.delta = out.node_part + out.string_part;
    return out;
}

GraphSummary summarize(const Lattice& lat)
{
    GraphSummary s;
    s.vertices = lat.size();
    s.order = lat.group().order();
    s.moduli = lat.group().moduli();
    s.generator = lat.group().generator_vertex();
    s.z_k = lat.canonical_cycle();
    s.z_min = fundamental_cycle(lat).cycle;
    s.rational = is_rational(lat);
    s.quotient = is_quotient(lat);
    s.star_shaped = lat.graph().is_star_shaped();
    s.string = lat.graph().is_string();
    if (s.star_shaped) {
        try {
            s.seifert = render_seifert(seifert_from_graph(lat.graph()));
        } catch (const NonMinimalLeg&) {
        }
    }
    return s;
}

DeltaRow delta_row(const Lattice& lat, const HElem& h, const SeriesOptions& opt)
{
    require_rational(lat);
    require_nonzero(lat, h);
    DeltaRow row;
    row.h = h;
    row.class_id = lat.group().format(h);
    row.s_h = minimal_class_cycle(lat, h);
    row.s_h_estar = lat.estar_coords(row.s_h);
    row.r = 0;
    for (const auto& c : row.s_h_estar) {
        row.r += c;
    }
    row.delta_chi = delta_chi(lat, h);
    row.delta_count = delta_count(lat, h, opt);

    const DualGraph& g = lat.graph();
    const bool quotient = is_quotient(lat);
    if (g.is_string()) {
        const QuotientDelta q = delta_quotient(lat, h);
        row.delta_struct = q.delta;
        row.route = "cyclic";
        row.epsilon = q.epsilon;
        row.rule = q.rule;
    } else if (minimal_star(g)) {
        const StarDelta sd = delta_star(lat, h);
        row.delta_struct = sd.delta;
        row.route = "star";
        row.s_h0 = sd.s_h0;
        row.n_values = sd.n_values;
        if (quotient) {
            const QuotientDelta q = delta_quotient(lat, h);
            row.epsilon = q.epsilon;
            row.rule = q.rule;
        }
    } else {
        row.delta_struct = delta_surgery(lat, h, opt).delta;
        row.route = "surgery";
    }
    row.curve_type = curve_type(row.r, row.delta_struct);

    if (row.delta_chi != row.delta_count || row.delta_chi != row.delta_struct || row.delta_chi < row.r - 1) {
        const HElem mh = lat.group().negate(h);
        std::ostringstream msg;
        msg << "routes disagree for class " << row.class_id << ": chi " << row.delta_chi << ", count "
            << row.delta_count << ", " << row.route << " " << row.delta_struct << ", r " << row.r
            << "\n  Z_K    = " << to_string(lat.canonical_cycle()) << "\n  r_h    = " << to_string(lat.r_of(h))
            << "\n  s_h    = " << to_string(row.s_h) << "\n  r_-h   = " << to_string(lat.r_of(mh))
            << "\n  s_-h   = " << to_string(minimal_class_cycle(lat, mh))
            << "\n  graph  = " << render_json(g);
        throw InternalInconsistency(msg.str());
    }
    return row;
}

DeltaReport full_report(const Lattice& lat, const ReportOptions& opt)
{
    require_rational(lat);
    DeltaReport rep;
    rep.summary = summarize(lat);
    std::vector<HElem> classes;
    for (auto& h : lat.group().elements()) {
        if (!lat.group().is_zero(h)) {
            classes.push_back(std::move(h));
        }
    }
    std::vector<DeltaRow> rows(classes.size());
    std::vector<std::exception_ptr> errors(classes.size());
    RegionCache cache;
    const SeriesOptions sopt{opt.budget, &cache};
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < classes.size(); i += stride) {
            try {
                rows[i] = delta_row(lat, classes[i], sopt);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(classes.size())));
    if (jobs <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(work, j, jobs);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    rep.rows = std::move(rows);
    return rep;
}

std::string tuple_string(const std::vector<Int>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i > 0 ? "," : "") + v[i].get_str();
    }
    return s + ")";
}

nlohmann::ordered_json to_json(const Cycle& c)
{
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < c.size(); ++v) {
        arr.push_back(to_string(c[v]));
    }
    return arr;
}

nlohmann::ordered_json to_json(const GraphSummary& s)
{
    nlohmann::ordered_json j;
    j["vertices"] = s.vertices;
    j["order"] = s.order;
    j["invariant_factors"] = s.moduli;
    if (s.generator) {
        j["generator"] = "E*_" + std::to_string(*s.generator);
    } else {
        j["generator"] = nullptr;
    }
    j["Z_K"] = {{"basis", "E"}, {"coeffs", to_json(s.z_k)}};
    j["Z_min"] = {{"basis", "E"}, {"coeffs", to_json(s.z_min)}};
    j["rational"] = s.rational;
    j["quotient"] = s.quotient;
    j["string"] = s.string;
    j["star_shaped"] = s.star_shaped;
    if (s.seifert) {
        j["seifert"] = *s.seifert;
    }
    return j;
}

nlohmann::ordered_json to_json(const DeltaRow& row)
{
    nlohmann::ordered_json j;
    j["class"] = row.class_id;
    auto est = nlohmann::ordered_json::array();
    for (const auto& c : row.s_h_estar) {
        est.push_back(c.get_str());
    }
    j["s_h"] = {{"basis", "E*"}, {"coeffs", est}};
    if (row.s_h0) {
        j["s_h0"] = to_string(*row.s_h0);
    }
    j["r"] = row.r.get_str();
    j["delta"] = row.delta_struct.get_str();
    j["delta_chi"] = row.delta_chi.get_str();
    j["delta_count"] = row.delta_count.get_str();
    j["delta_struct"] = {{"route", row.route}, {"value", row.delta_struct.get_str()}};
    if (row.epsilon) {
        j["epsilon"] = *row.epsilon;
        j["rule"] = row.rule;
    }
    j["curve_type"] = row.curve_type;
    if (!row.n_values.empty()) {
        auto nv = nlohmann::ordered_json::array();
        for (const auto& [n, v] : row.n_values) {
            nv.push_back({{"n", n.get_str()}, {"N", v.get_str()}});
        }
        j["N_values"] = nv;
    }
    return j;
}

nlohmann::ordered_json to_json(const DeltaReport& rep)
{
    nlohmann::ordered_json j;
    j["summary"] = to_json(rep.summary);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(to_json(r));
    }
    j["rows"] = rows;
    return j;
}

namespace {

std::vector<std::vector<std::string>> row_cells(const DeltaReport& rep)
{
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"class", "s_h(E*)", "s_h0", "r", "delta", "chi", "count", "route", "eps", "type", "N"});
    for (const auto& r : rep.rows) {
        std::string nv;
        for (const auto& [n, v] : r.n_values) {
            nv += (nv.empty() ? "" : " ") + n.get_str() + ":" + v.get_str();
        }
        cells.push_back({r.class_id, tuple_string(r.s_h_estar), r.s_h0 ? to_string(*r.s_h0) : "-", r.r.get_str(),
                         r.delta_struct.get_str(), r.delta_chi.get_str(), r.delta_count.get_str(), r.route,
                         r.epsilon ? std::to_string(*r.epsilon) : "-", r.curve_type, nv.empty() ? "-" : nv});
    }
    return cells;
}

} // namespace

std::string render_table(const std::vector<std::vector<std::string>>& cells)
{
    std::vector<std::size_t> width;
    for (const auto& row : cells) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << row[i];
            if (i + 1 < row.size()) {
                out << std::string(width[i] - row[i].size() + 2, ' ');
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const std::vector<std::vector<std::string>>& cells)
{
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            if (cell.find_first_of(", \"") != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : cell) {
                    quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                }
                cell = quoted + "\"";
            }
            out << (i > 0 ? "," : "") << cell;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_table(const DeltaReport& rep)
{
    return render_table(row_cells(rep));
}

std::string render_csv(const DeltaReport& rep)
{
    return render_csv(row_cells(rep));
}

} // namespace cdelta
