#include "cdelta/cyclic.hpp"

#include <utility>

#include "cdelta/error.hpp"

namespace cdelta {

Int HJData::subdet(std::size_t i, std::size_t j) const
{
    if (i == 0 || j > length() || i > length() + 2) {
        throw OutOfRange("subdeterminant index out of range");
    }
    if (j + 1 < i) {
        return 0;
    }
    return table_[i][j];
}

Rat evaluate_continued_fraction(std::span<const Int> ks)
{
    if (ks.empty()) {
        throw BadFraction("empty continued fraction");
    }
    Rat value(ks.back());
    for (std::size_t i = ks.size() - 1; i-- > 0;) {
        if (value == 0) {
            throw BadFraction("continued fraction has a zero tail");
        }
        value = Rat(ks[i]) - 1 / value;
    }
    return value;
}

HJData hj_from_chain(std::vector<Int> ks)
{
    if (ks.empty()) {
        throw BadFraction("empty chain");
    }
    for (const auto& k : ks) {
        if (k < 2) {
            throw BadFraction("chain entry " + k.get_str() + " is below 2");
        }
    }
    HJData hj;
    const std::size_t s = ks.size();
    hj.table_.assign(s + 3, std::vector<Int>(s + 1, Int(0)));
    for (std::size_t j = 0; j <= s; ++j) {
        hj.table_[j + 1][j] = 1;
        if (j + 2 <= s + 2) {
            hj.table_[j + 2][j] = 0;
        }
        for (std::size_t i = j; i >= 1; --i) {
            const Int next = hj.table_[i + 1][j];
            const Int next2 = (i + 2 <= j + 1) ? hj.table_[i + 2][j] : Int(0);
            hj.table_[i][j] = ks[i - 1] * next - next2;
        }
    }
    hj.ks_ = std::move(ks);
    hj.d_ = hj.table_[1][s];
    hj.q_ = hj.table_[2][s];
    hj.q_prime_ = hj.table_[1][s - 1];
    return hj;
}

HJData hj_expand(const Int& d, const Int& q)
{
    if (!(q > 0 && q < d) || gcd(d, q) != 1) {
        throw BadFraction(d.get_str() + "/" + q.get_str() + " needs 0 < q < d and gcd(d, q) = 1");
    }
    std::vector<Int> ks;
    Rat x = make_rat(d, q);
    for (;;) {
        const Int k = ceil_of(x);
        ks.push_back(k);
        if (Rat(k) == x) {
            break;
        }
        x = 1 / (Rat(k) - x);
    }
    HJData hj = hj_from_chain(std::move(ks));
    if (hj.d() != d || hj.q() != q) {
        throw InternalInconsistency("Hirzebruch-Jung expansion of " + d.get_str() + "/" + q.get_str()
                                    + " does not round-trip");
    }
    return hj;
}

std::vector<Int> cyclic_s_coeffs(const HJData& hj, const Int& a)
{
    if (a < 0 || a >= hj.d()) {
        throw OutOfRange("class index " + a.get_str() + " outside [0, " + hj.d().get_str() + ")");
    }
    const std::size_t s = hj.length();
    std::vector<Int> coeffs(s);
    Int rest = a;
    for (std::size_t i = 1; i <= s; ++i) {
        const Int w = hj.subdet(i + 1, s);
        mpz_fdiv_q(coeffs[i - 1].get_mpz_t(), rest.get_mpz_t(), w.get_mpz_t());
        rest -= w * coeffs[i - 1];
    }
    return coeffs;
}

Int cyclic_delta(const HJData& hj, const Int& a)
{
    if (a == 0) {
        throw EmptyCurve("class 0 carries the empty curve");
    }
    Int r = 0;
    for (const auto& c : cyclic_s_coeffs(hj, a)) {
        r += c;
    }
    return r - 1;
}

namespace detail {

Rat chi_minimal_cycle_closed_form(const HJData& hj, const Int& a)
{
    const Rat d(hj.d());
    Rat value = Rat(a) * (1 - d) / (2 * d);
    for (Int i = 1; i <= a; ++i) {
        value += frac_of(make_rat(i * hj.q_prime(), hj.d()));
    }
    return value;
}

} // namespace detail

} // namespace cdelta
