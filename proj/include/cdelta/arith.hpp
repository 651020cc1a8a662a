#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cdelta {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized n/d; d must be nonzero.
Rat make_rat(const Int& n, const Int& d);

Int floor_of(const Rat& x);
Int ceil_of(const Rat& x);
/// Fractional part in [0, 1).
Rat frac_of(const Rat& x);
bool is_integral(const Rat& x);

Int gcd(const Int& a, const Int& b);

/// Exact conversion; throws OutOfRange if the value does not fit.
std::int64_t to_i64(const Int& x);
std::int64_t to_i64(const Rat& x);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rat& x);
std::string to_string(const Int& x);

/// Accepts "p", "-p" and "p/q"; throws ParseError otherwise.
Rat parse_rational(std::string_view text);

Int binomial(long n, long k);

} // namespace cdelta
