#include "cdelta/series.hpp"

#include <functional>

#include "cdelta/error.hpp"
#include "cdelta/graph.hpp"
#include "cdelta/laufer.hpp"

namespace cdelta {

std::shared_ptr<const SeriesRegion> RegionCache::find_dominating(const Cycle& x) const
{
    std::lock_guard lock(mutex_);
    for (const auto& r : regions_) {
        if (r->bound.size() == x.size() && geq(r->bound, x)) {
            return r;
        }
    }
    return nullptr;
}

void RegionCache::insert(std::shared_ptr<const SeriesRegion> region)
{
    std::lock_guard lock(mutex_);
    regions_.push_back(std::move(region));
}

std::size_t RegionCache::size() const
{
    std::lock_guard lock(mutex_);
    return regions_.size();
}

namespace {

bool add_overflows(std::int64_t a, std::int64_t b, std::int64_t& out)
{
    return __builtin_add_overflow(a, b, &out);
}

// Depth-first walk over the monomials of Z(t). Partial exponent vectors
// whose I-coordinates already dominate the bound are cut: every extension
// dominates too, because each E*_v has positive coordinates.
class Walker {
public:
    using Visit = std::function<void(const std::vector<std::int64_t>&, std::int64_t, const HElem&,
                                     const std::vector<std::int64_t>&)>;

    Walker(const Lattice& lat, const std::vector<bool>& in_I, const Cycle& x, std::uint64_t budget)
        : lat_(lat), in_I_(in_I), budget_(budget), n_(lat.size())
    {
        lat.check(x);
        const Int& d = lat.det_abs();
        bound_.resize(n_);
        for (std::size_t u = 0; u < n_; ++u) {
            bound_[u] = to_i64(ceil_of(Rat(d) * x[u]));
        }
        const auto& inv = lat.dual_inverse();
        for (std::size_t v = 0; v < n_; ++v) {
            const int val = lat.graph().valency(v);
            if (val == 2) {
                continue;
            }
            Factor f;
            f.vertex = v;
            f.power = val - 2;
            f.weight.resize(n_);
            for (std::size_t u = 0; u < n_; ++u) {
                f.weight[u] = to_i64(Rat(d) * inv(u, v));
            }
            std::vector<Int> unit(n_, Int(0));
            unit[v] = 1;
            f.cls = lat.group().class_of_estar(unit);
            factors_.push_back(std::move(f));
        }
    }

    void run(const Visit& visit)
    {
        visit_ = &visit;
        exps_.assign(n_, 0);
        std::vector<std::int64_t> p(n_, 0);
        step(0, p, 1, lat_.group().zero());
    }

    const std::vector<std::int64_t>& bound() const { return bound_; }

private:
    struct Factor {
        std::size_t vertex;
        int power;
        std::vector<std::int64_t> weight;
        HElem cls;
    };

    bool dominates(const std::vector<std::int64_t>& p) const
    {
        for (std::size_t u = 0; u < n_; ++u) {
            if (in_I_[u] && p[u] < bound_[u]) {
                return false;
            }
        }
        return true;
    }

    static std::int64_t coefficient(int power, std::int64_t c)
    {
        if (power > 0) {
            const Int b = binomial(power, c);
            return (c % 2 == 0 ? 1 : -1) * to_i64(b);
        }
        return to_i64(binomial(c - power - 1, -power - 1));
    }

    void step(std::size_t idx, const std::vector<std::int64_t>& p, std::int64_t z, const HElem& cls)
    {
        if (++visited_ > budget_) {
            throw RegionTooLarge("series enumeration exceeded the budget of " + std::to_string(budget_)
                                 + " tuples");
        }
        if (dominates(p)) {
            return;
        }
        if (idx == factors_.size()) {
            (*visit_)(exps_, z, cls, p);
            return;
        }
        const Factor& f = factors_[idx];
        std::vector<std::int64_t> q = p;
        HElem c_cls = cls;
        for (std::int64_t c = 0;; ++c) {
            if (f.power > 0 && c > f.power) {
                break;
            }
            if (c > 0) {
                for (std::size_t u = 0; u < n_; ++u) {
                    if (add_overflows(q[u], f.weight[u], q[u])) {
                        throw RegionTooLarge("series exponent overflow");
                    }
                }
                c_cls = lat_.group().add(c_cls, f.cls);
                if (dominates(q)) {
                    break;
                }
            }
            const std::int64_t coef = coefficient(f.power, c);
            std::int64_t zz;
            if (__builtin_mul_overflow(z, coef, &zz)) {
                throw OutOfRange("series coefficient overflow");
            }
            exps_[f.vertex] = c;
            step(idx + 1, q, zz, c_cls);
        }
        exps_[f.vertex] = 0;
    }

    const Lattice& lat_;
    std::vector<bool> in_I_;
    std::uint64_t budget_;
    std::size_t n_;
    std::vector<std::int64_t> bound_;
    std::vector<Factor> factors_;
    std::vector<std::int64_t> exps_;
    const Visit* visit_ = nullptr;
    std::uint64_t visited_ = 0;
};

std::vector<bool> full_mask(std::size_t n)
{
    return std::vector<bool>(n, true);
}

bool below(const std::vector<std::int64_t>& scaled, const std::vector<std::int64_t>& bound)
{
    for (std::size_t u = 0; u < scaled.size(); ++u) {
        if (scaled[u] < bound[u]) {
            return true;
        }
    }
    return false;
}

std::vector<std::int64_t> scaled_bound(const Lattice& lat, const Cycle& x)
{
    std::vector<std::int64_t> b(x.size());
    for (std::size_t u = 0; u < x.size(); ++u) {
        b[u] = to_i64(ceil_of(Rat(lat.det_abs()) * x[u]));
    }
    return b;
}

std::shared_ptr<const SeriesRegion> region_for(const Lattice& lat, const Cycle& x, const SeriesOptions& opt)
{
    if (opt.cache != nullptr) {
        if (auto hit = opt.cache->find_dominating(x)) {
            return hit;
        }
    }
    auto region = std::make_shared<SeriesRegion>();
    region->bound = x;
    Walker w(lat, full_mask(lat.size()), x, opt.budget);
    w.run([&](const auto& e, std::int64_t z, const HElem& cls, const auto& p) {
        if (z != 0) {
            region->entries.push_back({e, z, cls, p});
        }
    });
    if (opt.cache != nullptr) {
        opt.cache->insert(region);
    }
    return region;
}

} // namespace

SeriesRegion z_coefficients(const Lattice& lat, const Cycle& x, const SeriesOptions& opt)
{
    const auto region = region_for(lat, x, opt);
    if (region->bound == x) {
        return *region;
    }
    SeriesRegion out;
    out.bound = x;
    const auto b = scaled_bound(lat, x);
    for (const auto& e : region->entries) {
        if (below(e.scaled, b)) {
            out.entries.push_back(e);
        }
    }
    return out;
}

std::int64_t counting_Q(const Lattice& lat, const HElem& h, const Cycle& x, const SeriesOptions& opt)
{
    if (opt.cache != nullptr) {
        const auto region = region_for(lat, x, opt);
        const auto b = scaled_bound(lat, x);
        const HElem hh = lat.group().add(h, lat.group().zero());
        std::int64_t sum = 0;
        for (const auto& e : region->entries) {
            if (e.cls == hh && below(e.scaled, b)) {
                sum += e.z;
            }
        }
        return sum;
    }
    std::vector<int> all(lat.size());
    for (std::size_t v = 0; v < all.size(); ++v) {
        all[v] = static_cast<int>(v);
    }
    return counting_Q_I(lat, h, all, x, opt);
}

std::int64_t counting_total(const Lattice& lat, const Cycle& x, const SeriesOptions& opt)
{
    Walker w(lat, full_mask(lat.size()), x, opt.budget);
    std::int64_t sum = 0;
    w.run([&](const auto&, std::int64_t z, const HElem&, const auto&) { sum += z; });
    return sum;
}

std::int64_t counting_Q_I(const Lattice& lat, const HElem& h, const std::vector<int>& I, const Cycle& x,
                          const SeriesOptions& opt)
{
    if (I.empty()) {
        throw PreconditionFailed("counting function needs a nonempty vertex set");
    }
    std::vector<bool> mask(lat.size(), false);
    for (int v : I) {
        if (v < 0 || static_cast<std::size_t>(v) >= lat.size()) {
            throw GraphMismatch("vertex " + std::to_string(v) + " is not on the graph");
        }
        mask[v] = true;
    }
    const HElem hh = lat.group().add(h, lat.group().zero());
    Walker w(lat, mask, x, opt.budget);
    std::int64_t sum = 0;
    w.run([&](const auto&, std::int64_t z, const HElem& cls, const auto&) {
        if (cls == hh) {
            sum += z;
        }
    });
    return sum;
}

Cycle dual_project(const Lattice& parent, const Lattice& sub, const std::vector<int>& to_parent, const Cycle& l)
{
    if (to_parent.size() != sub.size()) {
        throw GraphMismatch("vertex map does not match the subgraph");
    }
    const auto a = parent.estar_coords_q(l);
    std::vector<Rat> b(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
        b[i] = a.at(to_parent[i]);
    }
    return sub.from_estar(b);
}

SurgeryResult surgery_check(const Lattice& lat, const std::vector<int>& I, const Cycle& l, const SeriesOptions& opt)
{
    if (!is_rational(lat)) {
        throw NotRational("surgery identity needs a rational graph");
    }
    SurgeryResult res{};
    const HElem h = lat.class_of(l);
    res.lhs = counting_Q(lat, h, l, opt);
    res.q_I = counting_Q_I(lat, h, I, l, opt);
    res.rhs = res.q_I;
    for (auto& comp : components_minus(lat.graph(), I)) {
        Lattice sub(comp.graph);
        SurgeryTerm t;
        t.projected = dual_project(lat, sub, comp.to_parent, l);
        t.cls = sub.class_of(t.projected);
        t.value = counting_Q(sub, t.cls, t.projected, SeriesOptions{opt.budget, nullptr});
        t.to_parent = std::move(comp.to_parent);
        res.rhs += t.value;
        res.terms.push_back(std::move(t));
    }
    res.holds = res.lhs == res.rhs;
    return res;
}

std::int64_t kappa_top(const Lattice& lat, const Cycle& lc, const SeriesOptions& opt)
{
    if (!is_rational(lat)) {
        throw NotRational("kappa from the counting function needs a rational graph");
    }
    const Cycle x = lat.canonical_cycle() + lc;
    return counting_Q(lat, lat.class_of(x), x, opt);
}

} // namespace cdelta
