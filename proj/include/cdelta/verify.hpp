#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdelta/lattice.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

struct CheckResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    /// Observations record counterexamples to a stated claim without
    /// failing the run.
    bool observation = false;

    bool ok() const noexcept { return observation || failures == 0; }
};

/// Named counters of passed and failed checks, kept in first-use order.
class Checker {
public:
    void expect(bool cond, const std::string& name, const std::function<std::string()>& detail);
    /// As expect, but the result is an observation.
    void observe(bool cond, const std::string& name, const std::function<std::string()>& detail);
    void merge(const Checker& other);
    const std::vector<CheckResult>& results() const noexcept { return results_; }
    bool ok() const;
    std::size_t total_cases() const;

private:
    CheckResult& slot(const std::string& name);
    std::vector<CheckResult> results_;
};

struct VerifyOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    /// Random (I, l') triples per graph for the surgery identity.
    std::size_t surgery_samples = 4;
    /// Brute-force s_h against the box s_h + 3E when |det M| is at most this.
    std::int64_t box_det_limit = 60;
};

/// Lattice identities: class map, Z_K, chi, r_h.
void check_lattice(const Lattice& lat, Checker& chk);
/// Laufer sequences, rationality criteria, s_h against the box oracle.
void check_laufer(const Lattice& lat, Checker& chk, const VerifyOptions& opt);
/// Series sums, the surgery identity on sampled cycles, Q_[Z_K](Z_K) = 0.
void check_series(const Lattice& lat, Checker& chk, const VerifyOptions& opt);
/// Three-route delta agreement on every nonzero class.
void check_routes(const Lattice& lat, Checker& chk, const VerifyOptions& opt);
/// Seifert data, reduced transforms, minimality criterion and the
/// quotient-specific claims and lemmas.
void check_star(const Lattice& lat, Checker& chk);
/// Hirzebruch-Jung data and the string recursion for d/q.
void check_cyclic(const Int& d, const Int& q, Checker& chk, const VerifyOptions& opt);

/// Every applicable suite on one graph.
void check_graph(const Lattice& lat, Checker& chk, const VerifyOptions& opt);

/// Family sweeps. Results are merged in family order, so the outcome does
/// not depend on opt.jobs.
Checker verify_quotient_family(long dmax, long kmax, const VerifyOptions& opt);
Checker verify_cyclic_family(long dmax, const VerifyOptions& opt);
Checker verify_random(std::size_t count, const VerifyOptions& opt);
Checker verify_nonquotient_family(const std::vector<long>& ks, const VerifyOptions& opt);

/// Golden file: {"graph": ..., "report": ...} as written by the delta
/// command; the stored report must equal a fresh one.
Checker verify_golden(const std::string& path, const VerifyOptions& opt);

/// Parses "quotient:dmax=7,kmax=5", "cyclic:dmax=30", "random:count=50,seed=1",
/// "nonquotient:k=4..6", "golden:<path>" or a graph description.
Checker run_verify_spec(const std::string& spec, const VerifyOptions& opt);

} // namespace cdelta
