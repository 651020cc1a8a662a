#include "cdelta/arith.hpp"

#include <cctype>
#include <limits>

#include "cdelta/error.hpp"

namespace cdelta {

const char* errc_name(Errc code)
{
    switch (code) {
    case Errc::parse: return "ParseError";
    case Errc::validation: return "ValidationError";
    case Errc::graph_mismatch: return "GraphMismatch";
    case Errc::not_in_lprime: return "NotInLPrime";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::region_too_large: return "RegionTooLarge";
    case Errc::not_rational: return "NotRational";
    case Errc::not_star_shaped: return "NotStarShaped";
    case Errc::non_minimal_leg: return "NonMinimalLeg";
    case Errc::bad_fraction: return "BadFraction";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::empty_curve: return "EmptyCurve";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::not_quotient: return "NotQuotient";
    case Errc::no_nodes: return "NoNodes";
    case Errc::internal_inconsistency: return "InternalInconsistency";
    }
    return "Error";
}

Rat make_rat(const Int& n, const Int& d)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Int floor_of(const Rat& x)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int ceil_of(const Rat& x)
{
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Rat frac_of(const Rat& x)
{
    return x - Rat(floor_of(x));
}

bool is_integral(const Rat& x)
{
    return x.get_den() == 1;
}

Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::int64_t to_i64(const Int& x)
{
    if (!x.fits_slong_p()) {
        throw OutOfRange("integer " + x.get_str() + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(x.get_si());
}

std::int64_t to_i64(const Rat& x)
{
    if (!is_integral(x)) {
        throw OutOfRange("rational " + x.get_str() + " is not an integer");
    }
    return to_i64(Int(x.get_num()));
}

std::string to_string(const Rat& x)
{
    return x.get_str();
}

std::string to_string(const Int& x)
{
    return x.get_str();
}

Rat parse_rational(std::string_view text)
{
    auto is_int = [](std::string_view s) {
        if (s.empty()) {
            return false;
        }
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
                return false;
            }
        }
        return true;
    };
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };

    const auto first = text.find_first_not_of(" \t");
    text = first == std::string_view::npos ? std::string_view{} : text.substr(first, text.find_last_not_of(" \t") - first + 1);
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_int(num)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    Rat r(Int(std::string(strip_plus(num))));
    if (slash != std::string_view::npos) {
        const auto den = text.substr(slash + 1);
        if (!is_int(den) || den[0] == '-' || den[0] == '+') {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        Int d(std::string{den});
        if (d == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        r /= Rat(d);
    }
    r.canonicalize();
    return r;
}

Int binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace cdelta
