#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cubesum {

using BigInt = mpz_class;

enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

inline Sign parse_sign(char c) {
    if (c == '+') return Sign::Plus;
    if (c == '-') return Sign::Minus;
    throw std::invalid_argument(std::string("bad sign character '") + c + "'");
}

// Applies a sign to the second operand: lhs + rhs or lhs - rhs.
inline BigInt combine(const BigInt& lhs, Sign s, const BigInt& rhs) {
    return s == Sign::Plus ? BigInt(lhs + rhs) : BigInt(lhs - rhs);
}

// A violated mathematical precondition (zero where nonzero is required,
// a point outside a sign region, a gcd certificate that does not hold).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
    return gcd(gcd(a, b), gcd(c, d));
}

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline std::string to_string(const BigInt& a) { return a.get_str(10); }

} // namespace cubesum
