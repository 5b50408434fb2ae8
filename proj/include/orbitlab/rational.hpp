#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitlab {

using Int = mpz_class;
using Rat = mpq_class;

/// Bit length of |z| (0 has bit length 0).
inline long bit_length(const Int& z) {
    if (z == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

/// Larger of the numerator/denominator bit lengths.
inline long bit_length(const Rat& q) {
    return std::max(bit_length(Int(q.get_num())), bit_length(Int(q.get_den())));
}

/// Natural log of |z| for arbitrarily large z, correctly rounded to double.
double log_abs(const Int& z);

Int pow_int(const Int& base, unsigned long e);

/// base^e for possibly negative e; base must be nonzero when e < 0.
Rat pow_rat(const Rat& base, long e);

/// Exact k-th roots of q over the rationals (k >= 1): empty when none exist,
/// one entry for odd k, both signs for even k and positive q.
std::vector<Rat> rational_kth_roots(const Rat& q, unsigned long k);

/// Parses "p", "-p" or "p/q" with q > 0. Throws std::invalid_argument.
Rat parse_rational(const std::string& text);

/// Decimal string "p/q" (or "p" when q == 1), canonical form.
std::string rational_to_string(const Rat& q);

/// v_p(n) for n != 0; nullopt for n == 0.
std::optional<long> padic_valuation(const Int& n, const Int& p);

}  // namespace orbitlab
