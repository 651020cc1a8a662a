#include "cdelta/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cdelta/error.hpp"

namespace cdelta {

bool Cycle::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& x) { return x == 0; });
}

bool Cycle::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& x) { return cdelta::is_integral(x); });
}

Cycle& Cycle::operator+=(const Cycle& o)
{
    if (o.size() != size()) {
        throw GraphMismatch("adding cycles of sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
    }
    for (std::size_t v = 0; v < size(); ++v) {
        coeffs_[v] += o.coeffs_[v];
    }
    return *this;
}

Cycle& Cycle::operator-=(const Cycle& o)
{
    if (o.size() != size()) {
        throw GraphMismatch("subtracting cycles of sizes " + std::to_string(size()) + " and "
                            + std::to_string(o.size()));
    }
    for (std::size_t v = 0; v < size(); ++v) {
        coeffs_[v] -= o.coeffs_[v];
    }
    return *this;
}

Cycle& Cycle::operator*=(const Rat& f)
{
    for (auto& x : coeffs_) {
        x *= f;
    }
    return *this;
}

bool geq(const Cycle& a, const Cycle& b)
{
    if (a.size() != b.size()) {
        throw GraphMismatch("comparing cycles of different sizes");
    }
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] < b[v]) {
            return false;
        }
    }
    return true;
}

Cycle cwise_min(const Cycle& a, const Cycle& b)
{
    if (a.size() != b.size()) {
        throw GraphMismatch("min of cycles of different sizes");
    }
    Cycle out = a;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (b[v] < a[v]) {
            out.set(v, b[v]);
        }
    }
    return out;
}

std::string to_string(const Cycle& c)
{
    std::string s = "(";
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (v > 0) {
            s += ",";
        }
        s += to_string(c[v]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t mod_floor(const Int& x, std::int64_t m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Int(m).get_mpz_t());
    return to_i64(r);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), Int(a).get_mpz_t(), Int(m).get_mpz_t()) == 0) {
        throw InternalInconsistency("residue is not invertible");
    }
    return to_i64(r);
}

} // namespace

DiscriminantGroup::DiscriminantGroup(const IntMatrix& m, const std::vector<int>& preferred_generators)
{
    const std::size_t n = m.rows();
    SmithForm snf = smith_normal_form(m);
    divisors_ = snf.diagonal;
    Int order = 1;
    for (const auto& d : divisors_) {
        if (d == 0) {
            throw SingularMatrix("intersection matrix is degenerate");
        }
        order *= d;
    }
    order_ = to_i64(order);

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (divisors_[i] > 1) {
            keep.push_back(i);
            moduli_.push_back(to_i64(divisors_[i]));
        }
    }
    projection_ = IntMatrix(keep.size(), n);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            projection_(r, c) = snf.left(keep[r], c);
        }
    }
    const RatMatrix left_inv = inverse(to_rational(snf.left));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        std::vector<Int> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_integral(left_inv(i, keep[r]))) {
                throw InternalInconsistency("Smith transform is not unimodular");
            }
            col[i] = left_inv(i, keep[r]).get_num();
        }
        lifts_.push_back(std::move(col));
    }

    if (moduli_.size() == 1) {
        const std::int64_t d = moduli_[0];
        std::vector<int> candidates = preferred_generators;
        for (std::size_t v = 0; v < n; ++v) {
            candidates.push_back(static_cast<int>(v));
        }
        for (int w : candidates) {
            const std::int64_t val = mod_floor(projection_(0, w), d);
            if (std::gcd(val, d) != 1) {
                continue;
            }
            const std::int64_t inv = mod_inverse(val, d);
            for (std::size_t c = 0; c < n; ++c) {
                projection_(0, c) = mod_floor(projection_(0, c) * inv, d);
            }
            lifts_[0].assign(n, Int(0));
            lifts_[0][w] = 1;
            generator_ = w;
            break;
        }
    }
}

HElem DiscriminantGroup::reduce(HElem h) const
{
    if (h.size() != moduli_.size()) {
        throw GraphMismatch("class tuple has wrong length");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] %= moduli_[i];
        if (h[i] < 0) {
            h[i] += moduli_[i];
        }
    }
    return h;
}

bool DiscriminantGroup::is_zero(const HElem& h) const
{
    return reduce(h) == zero();
}

HElem DiscriminantGroup::add(const HElem& a, const HElem& b) const
{
    HElem r = reduce(a);
    const HElem bb = reduce(b);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += bb[i];
    }
    return reduce(std::move(r));
}

HElem DiscriminantGroup::negate(const HElem& a) const
{
    HElem r = reduce(a);
    for (auto& x : r) {
        x = -x;
    }
    return reduce(std::move(r));
}

HElem DiscriminantGroup::scale(const HElem& a, std::int64_t k) const
{
    HElem r = reduce(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = mod_floor(Int(r[i]) * k, moduli_[i]);
    }
    return r;
}

HElem DiscriminantGroup::class_of_estar(const std::vector<Int>& c) const
{
    if (c.size() != projection_.cols()) {
        throw GraphMismatch("coordinate vector has wrong length");
    }
    HElem h(moduli_.size());
    for (std::size_t r = 0; r < moduli_.size(); ++r) {
        Int acc = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            acc += projection_(r, j) * c[j];
        }
        h[r] = mod_floor(acc, moduli_[r]);
    }
    return h;
}

std::vector<Int> DiscriminantGroup::lift(const HElem& h) const
{
    const HElem hh = reduce(h);
    std::vector<Int> c(projection_.cols(), Int(0));
    for (std::size_t r = 0; r < hh.size(); ++r) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            c[j] += lifts_[r][j] * hh[r];
        }
    }
    return c;
}

std::vector<HElem> DiscriminantGroup::elements() const
{
    std::vector<HElem> out;
    out.reserve(static_cast<std::size_t>(order_));
    HElem cur = zero();
    for (;;) {
        out.push_back(cur);
        std::size_t i = cur.size();
        while (i > 0) {
            --i;
            if (++cur[i] < moduli_[i]) {
                break;
            }
            cur[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (cur.empty()) {
            return out;
        }
    }
}

std::size_t DiscriminantGroup::index_of(const HElem& h) const
{
    const HElem hh = reduce(h);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < hh.size(); ++i) {
        idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(hh[i]);
    }
    return idx;
}

std::string DiscriminantGroup::format(const HElem& h) const
{
    const HElem hh = reduce(h);
    if (hh.empty()) {
        return "0";
    }
    if (hh.size() == 1) {
        return std::to_string(hh[0]);
    }
    std::string s = "(";
    for (std::size_t i = 0; i < hh.size(); ++i) {
        s += (i > 0 ? "," : "") + std::to_string(hh[i]);
    }
    return s + ")";
}

HElem DiscriminantGroup::parse(std::string_view text) const
{
    std::string t;
    for (char c : text) {
        if (c != '(' && c != ')' && c != ' ') {
            t.push_back(c);
        }
    }
    HElem h;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const Rat r = parse_rational(part);
        if (!is_integral(r)) {
            throw ParseError("class component '" + part + "' is not an integer");
        }
        h.push_back(to_i64(r));
    }
    if (moduli_.empty() && h == HElem{0}) {
        return {};
    }
    if (h.size() != moduli_.size()) {
        throw ParseError("class '" + std::string(text) + "' needs " + std::to_string(moduli_.size())
                         + " components");
    }
    return reduce(std::move(h));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> preferred_generators(const DualGraph& g)
{
    if (g.size() == 1) {
        return {0};
    }
    if (g.is_string()) {
        std::vector<int> ends;
        for (std::size_t v = g.size(); v-- > 0;) {
            if (g.valency(v) == 1) {
                ends.push_back(static_cast<int>(v));
            }
        }
        return ends;
    }
    if (g.is_star_shaped()) {
        return g.nodes();
    }
    return {};
}

} // namespace

Lattice::Lattice(DualGraph g)
    : graph_(std::move(g)), m_(intersection_matrix(graph_)), dual_inv_(cdelta::dual_inverse(m_)),
      det_abs_(abs(determinant(m_))), group_(m_, preferred_generators(graph_))
{
    zk_ = canonical_cycle_valency();
    if (!(canonical_cycle_adjunction() == zk_)) {
        throw InternalInconsistency("the two canonical cycle formulas disagree: " + to_string(zk_) + " vs "
                                    + to_string(canonical_cycle_adjunction()));
    }
    if (group_.order() != det_abs_) {
        throw InternalInconsistency("|H| differs from |det M|");
    }
}

void Lattice::check(const Cycle& l) const
{
    if (l.size() != size()) {
        throw GraphMismatch("cycle has " + std::to_string(l.size()) + " coefficients, graph has "
                            + std::to_string(size()) + " vertices");
    }
}

Cycle Lattice::e(std::size_t v) const
{
    Cycle c = Cycle::zero(size());
    c.set(v, 1);
    return c;
}

Cycle Lattice::estar(std::size_t v) const
{
    return Cycle(dual_inv_.column(v));
}

Cycle Lattice::e_total() const
{
    return Cycle(std::vector<Rat>(size(), Rat(1)));
}

Rat Lattice::pairing(const Cycle& x, const Cycle& y) const
{
    check(x);
    check(y);
    Rat acc = 0;
    for (std::size_t u = 0; u < size(); ++u) {
        if (x[u] == 0) {
            continue;
        }
        Rat row = 0;
        for (std::size_t v = 0; v < size(); ++v) {
            if (m_(u, v) != 0) {
                row += Rat(m_(u, v)) * y[v];
            }
        }
        acc += x[u] * row;
    }
    return acc;
}

std::vector<Rat> Lattice::estar_coords_q(const Cycle& l) const
{
    check(l);
    std::vector<Rat> a(size());
    for (std::size_t v = 0; v < size(); ++v) {
        Rat acc = 0;
        for (std::size_t u = 0; u < size(); ++u) {
            if (m_(v, u) != 0) {
                acc += Rat(m_(v, u)) * l[u];
            }
        }
        a[v] = -acc;
    }
    return a;
}

std::vector<Int> Lattice::estar_coords(const Cycle& l) const
{
    const auto q = estar_coords_q(l);
    std::vector<Int> a(q.size());
    for (std::size_t v = 0; v < q.size(); ++v) {
        if (!is_integral(q[v])) {
            throw NotInLPrime("cycle " + to_string(l) + " is not in L'");
        }
        a[v] = q[v].get_num();
    }
    return a;
}

Cycle Lattice::from_estar(const std::vector<Int>& a) const
{
    std::vector<Rat> q(a.begin(), a.end());
    return from_estar(q);
}

Cycle Lattice::from_estar(const std::vector<Rat>& a) const
{
    if (a.size() != size()) {
        throw GraphMismatch("E*-coordinate vector has wrong length");
    }
    return Cycle(multiply(dual_inv_, a));
}

bool Lattice::in_lprime(const Cycle& l) const
{
    const auto q = estar_coords_q(l);
    return std::all_of(q.begin(), q.end(), [](const Rat& x) { return is_integral(x); });
}

HElem Lattice::class_of(const Cycle& l) const
{
    return group_.class_of_estar(estar_coords(l));
}

Cycle Lattice::canonical_cycle_adjunction() const
{
    std::vector<Rat> rhs(size());
    for (std::size_t v = 0; v < size(); ++v) {
        rhs[v] = Rat(graph_.vertex(v).euler + 2);
    }
    // M z = rhs  <=>  z = -(-M^{-1}) rhs
    Cycle z(multiply(dual_inv_, rhs));
    return -z;
}

Cycle Lattice::canonical_cycle_valency() const
{
    std::vector<Rat> a(size());
    for (std::size_t v = 0; v < size(); ++v) {
        a[v] = Rat(graph_.valency(v) - 2);
    }
    return e_total() + from_estar(a);
}

Rat Lattice::chi(const Cycle& l) const
{
    return -pairing(l, l - zk_) / 2;
}

Cycle Lattice::r_of(const HElem& h) const
{
    Cycle lift = from_estar(group_.lift(h));
    for (std::size_t v = 0; v < size(); ++v) {
        lift.set(v, frac_of(lift[v]));
    }
    return lift;
}

std::vector<std::pair<HElem, Cycle>> Lattice::enumerate_classes() const
{
    std::vector<std::pair<HElem, Cycle>> out;
    for (auto& h : group_.elements()) {
        Cycle r = r_of(h);
        out.emplace_back(std::move(h), std::move(r));
    }
    return out;
}

} // namespace cdelta
