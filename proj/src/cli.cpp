#include "cdelta/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdelta/cyclic.hpp"
#include "cdelta/error.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/laufer.hpp"
#include "cdelta/report.hpp"
#include "cdelta/series.hpp"
#include "cdelta/star.hpp"
#include "cdelta/verify.hpp"

namespace cdelta {

namespace {

using ojson = nlohmann::ordered_json;
using Cells = std::vector<std::vector<std::string>>;

enum class Format { json, table, csv };
enum class VerifyLevel { off, oracle, exhaustive };

struct Config {
    std::uint64_t budget = kDefaultBudget;
    Format format = Format::table;
    VerifyLevel verify = VerifyLevel::off;
    unsigned jobs = 1;
};

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

/// "@path" reads the description from a file, "-" from standard input.
std::string graph_text(const std::string& arg)
{
    if (arg == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) {
            throw ParseError("cannot open " + arg.substr(1));
        }
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
    return arg;
}

std::string cycle_text(const Cycle& c)
{
    return to_string(c);
}

ojson strings(const std::vector<Int>& v)
{
    auto a = ojson::array();
    for (const auto& x : v) {
        a.push_back(x.get_str());
    }
    return a;
}

ojson steps_json(const ComputationSequence& seq)
{
    auto a = ojson::array();
    for (const auto& s : seq) {
        a.push_back({{"cycle", to_json(s.cycle)}, {"vertex", s.vertex}, {"pairing", to_string(s.pairing)}});
    }
    return a;
}

void emit(std::ostream& out, Format f, const ojson& j, const Cells& cells)
{
    switch (f) {
    case Format::json:
        out << j.dump(2) << '\n';
        break;
    case Format::table:
        out << render_table(cells);
        break;
    case Format::csv:
        out << render_csv(cells);
        break;
    }
}

/// Runs the requested oracle suites; false if any check failed.
bool run_oracles(const Lattice& lat, const Config& cfg, std::ostream& err)
{
    if (cfg.verify == VerifyLevel::off) {
        return true;
    }
    VerifyOptions vo;
    vo.budget = cfg.budget;
    vo.jobs = cfg.jobs;
    Checker chk;
    if (cfg.verify == VerifyLevel::oracle) {
        check_lattice(lat, chk);
        check_laufer(lat, chk, vo);
        check_routes(lat, chk, vo);
    } else {
        check_graph(lat, chk, vo);
    }
    for (const auto& r : chk.results()) {
        if (r.failures > 0) {
            err << (r.observation ? "verify: REFUTED " : "verify: FAIL ") << r.name << " (" << r.failures << "/" << r.cases << "): " << r.first_failure
                << '\n';
        }
    }
    err << "verify: " << chk.total_cases() << " checks, " << (chk.ok() ? "all passed" : "FAILED") << '\n';
    return chk.ok();
}

int cmd_info(const Lattice& lat, const Config& cfg, std::ostream& out)
{
    const GraphSummary s = summarize(lat);
    const std::size_t n = lat.size();
    ojson j;
    j["graph"] = ojson::parse(render_json(lat.graph()));
    j["summary"] = to_json(s);
    auto m = ojson::array();
    auto mi = ojson::array();
    for (std::size_t r = 0; r < n; ++r) {
        auto row = ojson::array();
        auto irow = ojson::array();
        for (std::size_t c = 0; c < n; ++c) {
            row.push_back(lat.intersection()(r, c).get_str());
            irow.push_back(to_string(lat.dual_inverse()(r, c)));
        }
        m.push_back(row);
        mi.push_back(irow);
    }
    j["intersection_matrix"] = m;
    j["minus_inverse"] = mi;
    j["elementary_divisors"] = strings(lat.group().elementary_divisors());
    const auto zmin = fundamental_cycle(lat);
    j["laufer_sequence"] = steps_json(zmin.sequence);

    Cells cells{{"field", "value"}};
    cells.push_back({"vertices", std::to_string(n)});
    cells.push_back({"|H|", std::to_string(s.order)});
    std::string mods;
    for (auto d : s.moduli) {
        mods += (mods.empty() ? "" : "x") + ("Z/" + std::to_string(d));
    }
    cells.push_back({"H", mods.empty() ? "0" : mods});
    cells.push_back({"generator", s.generator ? "E*_" + std::to_string(*s.generator) : "-"});
    cells.push_back({"Z_K", cycle_text(s.z_k)});
    cells.push_back({"Z_min", cycle_text(s.z_min)});
    std::string pairings;
    for (const auto& st : zmin.sequence) {
        pairings += (pairings.empty() ? "" : " ") + to_string(st.pairing);
    }
    cells.push_back({"laufer_pairings", pairings.empty() ? "-" : pairings});
    cells.push_back({"rational", s.rational ? "yes" : "no"});
    cells.push_back({"quotient", s.quotient ? "yes" : "no"});
    cells.push_back({"string", s.string ? "yes" : "no"});
    cells.push_back({"star_shaped", s.star_shaped ? "yes" : "no"});
    cells.push_back({"seifert", s.seifert ? *s.seifert : "-"});
    for (std::size_t v = 0; v < n; ++v) {
        cells.push_back({"E*_" + std::to_string(v), cycle_text(lat.estar(v))});
    }
    emit(out, cfg.format, j, cells);
    return exit_ok;
}

int cmd_classes(const Lattice& lat, const Config& cfg, std::ostream& out)
{
    auto rows = ojson::array();
    Cells cells{{"class", "r_h(E)", "lift(E*)", "chi(r_h)"}};
    for (const auto& [h, r] : lat.enumerate_classes()) {
        const std::string id = lat.group().format(h);
        const auto lift = lat.group().lift(h);
        rows.push_back({{"class", id}, {"r_h", to_json(r)}, {"lift_estar", strings(lift)},
                        {"chi_r_h", to_string(lat.chi(r))}});
        cells.push_back({id, cycle_text(r), tuple_string(lift), to_string(lat.chi(r))});
    }
    emit(out, cfg.format, ojson{{"order", lat.group().order()}, {"classes", rows}}, cells);
    return exit_ok;
}

int cmd_mincycles(const Lattice& lat, const Config& cfg, std::ostream& out)
{
    auto rows = ojson::array();
    Cells cells{{"class", "s_h(E)", "s_h(E*)", "steps", "chi(s_h)"}};
    for (const auto& [h, r] : lat.enumerate_classes()) {
        const std::string id = lat.group().format(h);
        const auto res = s_of(lat, r);
        const auto est = lat.estar_coords(res.cycle);
        rows.push_back({{"class", id}, {"s_h", to_json(res.cycle)}, {"s_h_estar", strings(est)},
                        {"chi_s_h", to_string(lat.chi(res.cycle))}, {"laufer_sequence", steps_json(res.sequence)}});
        cells.push_back({id, cycle_text(res.cycle), tuple_string(est), std::to_string(res.sequence.size()),
                         to_string(lat.chi(res.cycle))});
    }
    emit(out, cfg.format, ojson{{"order", lat.group().order()}, {"min_cycles", rows}}, cells);
    return exit_ok;
}

int cmd_series(const Lattice& lat, const std::string& bound, const Config& cfg, std::ostream& out)
{
    const Cycle x = parse_cycle(lat, bound);
    const SeriesRegion reg = z_coefficients(lat, x, SeriesOptions{cfg.budget, nullptr});
    auto rows = ojson::array();
    Cells cells{{"exponents(E*)", "z", "class"}};
    for (const auto& e : reg.entries) {
        std::vector<Int> ex(e.exponents.begin(), e.exponents.end());
        const std::string id = lat.group().format(e.cls);
        rows.push_back({{"exponents", e.exponents}, {"z", e.z}, {"class", id}});
        cells.push_back({tuple_string(ex), std::to_string(e.z), id});
    }
    emit(out, cfg.format, ojson{{"bound", to_json(x)}, {"region", rows}}, cells);
    return exit_ok;
}

int cmd_delta(const Lattice& lat, const std::string& cls, bool golden, const Config& cfg, std::ostream& out,
              std::ostream& err)
{
    DeltaReport rep;
    if (cls.empty()) {
        rep = full_report(lat, ReportOptions{cfg.budget, cfg.jobs});
    } else {
        rep.summary = summarize(lat);
        const HElem h = lat.group().parse(cls);
        try {
            rep.rows.push_back(delta_row(lat, h, SeriesOptions{cfg.budget, nullptr}));
        } catch (const EmptyCurve& e) {
            err << "notice: " << e.what() << '\n';
        }
    }
    if (golden) {
        out << ojson{{"graph", render_json(lat.graph())}, {"report", to_json(rep)}}.dump(2) << '\n';
        return exit_ok;
    }
    switch (cfg.format) {
    case Format::json:
        out << to_json(rep).dump(2) << '\n';
        break;
    case Format::table:
        out << render_table(rep);
        break;
    case Format::csv:
        out << render_csv(rep);
        break;
    }
    return exit_ok;
}

int cmd_cqs_table(const std::string& frac, const Config& cfg, std::ostream& out)
{
    const auto slash = frac.find('/');
    if (slash == std::string::npos) {
        throw ParseError("expected d/q, got '" + frac + "'");
    }
    const Rat d = parse_rational(trim(frac.substr(0, slash)));
    const Rat q = parse_rational(trim(frac.substr(slash + 1)));
    if (!is_integral(d) || !is_integral(q)) {
        throw ParseError("d and q must be integers");
    }
    const HJData hj = hj_expand(d.get_num(), q.get_num());
    auto rows = ojson::array();
    Cells cells{{"a", "tuple", "r", "delta"}};
    for (Int a = 0; a < hj.d(); ++a) {
        const auto co = cyclic_s_coeffs(hj, a);
        Int r = 0;
        for (const auto& c : co) {
            r += c;
        }
        const std::string delta = a == 0 ? "-" : cyclic_delta(hj, a).get_str();
        ojson row{{"a", a.get_str()}, {"tuple", strings(co)}, {"r", r.get_str()}};
        row["delta"] = a == 0 ? ojson(nullptr) : ojson(delta);
        rows.push_back(row);
        cells.push_back({a.get_str(), tuple_string(co), r.get_str(), delta});
    }
    ojson j{{"d", hj.d().get_str()}, {"q", hj.q().get_str()}, {"chain", strings(hj.ks())}, {"classes", rows}};
    emit(out, cfg.format, j, cells);
    return exit_ok;
}

int cmd_verify(const std::string& spec, const Config& cfg, std::ostream& out)
{
    VerifyOptions vo;
    vo.budget = cfg.budget;
    vo.jobs = cfg.jobs;
    const Checker chk = run_verify_spec(graph_text(spec), vo);
    auto rows = ojson::array();
    Cells cells{{"status", "check", "cases", "failures", "first_failure"}};
    for (const auto& r : chk.results()) {
        rows.push_back({{"check", r.name}, {"observation", r.observation}, {"cases", r.cases},
                        {"failures", r.failures}, {"ok", r.ok()},
                        {"first_failure", r.failures == 0 ? ojson(nullptr) : ojson(r.first_failure)}});
        const std::string status = r.observation ? (r.failures == 0 ? "HOLDS" : "REFUTED") : r.ok() ? "PASS" : "FAIL";
        cells.push_back({status, r.name, std::to_string(r.cases), std::to_string(r.failures),
                         r.failures == 0 ? "-" : r.first_failure});
    }
    emit(out, cfg.format, ojson{{"spec", spec}, {"ok", chk.ok()}, {"checks", rows}}, cells);
    if (cfg.format == Format::table) {
        out << (chk.ok() ? "PASS" : "FAIL") << ": " << chk.total_cases() << " cases in " << chk.results().size()
            << " checks\n";
    }
    return chk.ok() ? exit_ok : exit_inconsistency;
}

int exit_for(const Error& e)
{
    return e.code() == Errc::internal_inconsistency ? exit_inconsistency : exit_validation;
}

} // namespace

Cycle parse_cycle(const Lattice& lat, const std::string& text)
{
    const std::string t = trim(text);
    const std::size_t n = lat.size();
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') {
            throw ParseError("unterminated cycle vector '" + t + "'");
        }
        std::vector<Rat> c;
        std::stringstream ss(t.substr(1, t.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            c.push_back(parse_rational(trim(item)));
        }
        if (c.size() != n) {
            throw ParseError("cycle has " + std::to_string(c.size()) + " coefficients, graph has " +
                             std::to_string(n) + " vertices");
        }
        return Cycle(std::move(c));
    }
    Cycle sum = Cycle::zero(n);
    std::size_t pos = 0;
    if (t.empty()) {
        throw ParseError("empty cycle expression");
    }
    while (pos < t.size()) {
        Rat sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < t.size() && t[end] != '+' && t[end] != '-') {
            ++end;
        }
        std::string term = trim(t.substr(pos, end - pos));
        pos = end;
        std::size_t k = 0;
        while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/')) {
            ++k;
        }
        Rat factor = k > 0 ? parse_rational(term.substr(0, k)) : Rat(1);
        std::string atom = trim(term.substr(k));
        if (!atom.empty() && atom.front() == '*') {
            atom = trim(atom.substr(1));
        }
        Cycle c;
        auto vertex = [&](std::size_t skip) {
            const std::string idx = atom.substr(skip);
            if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("bad vertex index in '" + atom + "'");
            }
            const unsigned long v = std::stoul(idx);
            if (v >= n) {
                throw ParseError("vertex " + idx + " out of range");
            }
            return static_cast<std::size_t>(v);
        };
        if (atom == "Z_K" || atom == "ZK") {
            c = lat.canonical_cycle();
        } else if (atom == "Z_min") {
            c = fundamental_cycle(lat).cycle;
        } else if (atom == "E") {
            c = lat.e_total();
        } else if (atom.rfind("E*_", 0) == 0) {
            c = lat.estar(vertex(3));
        } else if (atom.rfind("E_", 0) == 0) {
            c = lat.e(vertex(2));
        } else {
            throw ParseError("unknown cycle atom '" + atom + "'");
        }
        sum += sign * factor * c;
    }
    return sum;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lattice invariants and delta invariants of minimal generic curves on rational surface singularities",
                 "cdelta"};
    app.require_subcommand(1);

    Config cfg;
    std::string format = "table";
    std::string verify_level = "off";
    std::uint64_t budget = kDefaultBudget;
    if (const char* env = std::getenv("CDELTA_BUDGET")) {
        try {
            budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "CDELTA_BUDGET must be a positive integer\n";
            return exit_usage;
        }
    }
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
    app.add_option("--budget", budget, "Enumeration budget (tuples); overrides CDELTA_BUDGET");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--verify", verify_level, "Oracle level for info and delta")
        ->check(CLI::IsMember({"off", "oracle", "exhaustive"}));

    std::string graph;
    std::string bound;
    std::string cls;
    bool all = false;
    bool golden = false;
    std::string spec;
    std::string frac;

    auto* info = app.add_subcommand("info", "Graph summary: M, -M^-1, H, Z_K, Z_min, rationality, Seifert data");
    auto* classes = app.add_subcommand("classes", "Classes of H with r_h");
    auto* mincycles = app.add_subcommand("mincycles", "Minimal cycles s_h with their Laufer sequences");
    auto* series = app.add_subcommand("series", "Coefficients of Z(t) on the region below a bound");
    auto* delta = app.add_subcommand("delta", "Delta invariants by three routes");
    auto* verify = app.add_subcommand("verify", "Oracle suites on a graph or family");
    auto* cqs = app.add_subcommand("cqs-table", "Minimal tuples, r and delta for a cyclic quotient d/q");
    for (auto* sub : {info, classes, mincycles, series, delta}) {
        sub->add_option("graph", graph, "Graph: JSON, sf:..., cqs:d/q, ade:..., @file or -")->required();
        sub->fallthrough();
    }
    series->add_option("--bound", bound, "Cycle expression, e.g. Z_K+E or [1,1/2,...]")->required();
    auto* class_opt = delta->add_option("--class", cls, "Class id as printed by 'classes'");
    delta->add_flag("--all", all, "Every nonzero class (default)")->excludes(class_opt);
    delta->add_flag("--golden", golden, "Emit a golden file for 'verify golden:<path>'");
    verify->add_option("spec", spec, "quotient:dmax=7,kmax=5 | cyclic:dmax=30 | random:count=50,seed=1 | "
                                     "nonquotient:kmin=4,kmax=6 | golden:<path> | graph")
        ->required();
    verify->fallthrough();
    cqs->add_option("fraction", frac, "d/q")->required();
    cqs->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::table;
    cfg.verify = verify_level == "oracle"       ? VerifyLevel::oracle
                 : verify_level == "exhaustive" ? VerifyLevel::exhaustive
                                                : VerifyLevel::off;
    if (budget == 0) {
        err << "budget must be positive\n";
        return exit_usage;
    }
    cfg.budget = budget;
    if (golden && !cls.empty()) {
        err << "--golden needs the full report\n";
        return exit_usage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(spec, cfg, out);
        }
        if (cqs->parsed()) {
            return cmd_cqs_table(frac, cfg, out);
        }
        const Lattice lat(parse_graph(graph_text(graph)));
        int rc = exit_ok;
        if (info->parsed()) {
            rc = cmd_info(lat, cfg, out);
        } else if (classes->parsed()) {
            rc = cmd_classes(lat, cfg, out);
        } else if (mincycles->parsed()) {
            rc = cmd_mincycles(lat, cfg, out);
        } else if (series->parsed()) {
            rc = cmd_series(lat, bound, cfg, out);
        } else if (delta->parsed()) {
            rc = cmd_delta(lat, cls, golden, cfg, out, err);
        }
        if (rc == exit_ok && !run_oracles(lat, cfg, err)) {
            rc = exit_inconsistency;
        }
        return rc;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e);
    }
}

} // namespace cdelta
