#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cubesum/core.hpp"

namespace cubesum {

// One signed power term of an identity: coeff * base^exponent, coeff = +-1.
struct Term {
    BigInt base;
    unsigned exponent = 0;
    int coeff = 1;

    BigInt evaluate() const;
};

// lhs terms sum to rhs terms.
struct Identity {
    std::vector<Term> lhs;
    std::vector<Term> rhs;
};

using Params = std::vector<long long>;

// Lower bound on an instance's common value, nondecreasing in every
// parameter; enumeration stops a parameter once this exceeds the bound.
using ValueFloor = BigInt (*)(std::span<const BigInt>);
using IdentityFn = Identity (*)(std::span<const BigInt>);
// Empty when the parameters are in the family's domain, otherwise why not.
using DomainFn = std::optional<std::string> (*)(std::span<const BigInt>);

struct FamilyDescriptor {
    std::string name;
    std::string key;
    std::string k_text;
    // Unset when the sign pair depends on where the parameters fall (F3, F3b).
    std::optional<std::pair<Sign, Sign>> signs;
    std::vector<std::string> param_names;
    std::vector<long long> param_min;
    std::string domain_text;
    // gcd(x,y,a,b) of every generated instance; 0 when none is declared.
    unsigned gcd_guarantee = 1;

    IdentityFn identity = nullptr;
    DomainFn domain = nullptr;
    ValueFloor value_floor = nullptr;

    std::size_t arity() const { return param_names.size(); }
};

// x^3 s1 y^3 = a^k s2 b^(b_exponent) = value. b_exponent equals k for
// every family except F10 (fourth power plus square).
struct FamilyInstance {
    std::string family;
    Params params;
    unsigned k = 0;
    unsigned b_exponent = 0;
    Sign s1 = Sign::Plus;
    Sign s2 = Sign::Plus;
    BigInt x, y, a, b;
    BigInt value;
    BigInt quad_gcd;
};

struct IdentityReport {
    std::string family;
    Params params;
    bool equal = false;
    BigInt lhs;
    BigInt rhs;
    std::optional<std::string> domain_violation;
};

const std::vector<FamilyDescriptor>& family_table();

/// Lookup by name ("F4") or key ("k6-minus-minus"). Throws
/// std::invalid_argument for unknown names.
const FamilyDescriptor& find_family(std::string_view name);

/// Evaluates the raw identity exactly. Domain violations are reported in
/// the result, not thrown.
IdentityReport verify_identity(std::string_view name, const Params& params);

/// Rearranges the identity into a positive quadruple. Throws DomainError
/// for out-of-domain parameters or a failed gcd certificate.
FamilyInstance generate(std::string_view name, const Params& params);

/// Every in-domain instance with value <= N, ascending by value (then params).
std::vector<FamilyInstance> enumerate_under_bound(std::string_view name, const BigInt& N);

struct CountBound {
    BigInt v_max;          // largest v with 16 v^12 <= N
    BigInt phi_sum;        // sum of phi(v) for v <= v_max
    mpq_class count;       // phi_sum / 2
    double asymptotic = 0; // (3/pi^2) (N/16)^(1/6) / 2
    double ratio() const { return count.get_d() / asymptotic; }
};

/// Minorant for C_4(+,-)(N) from the F1 family. Requires N >= 16.
CountBound c4pm_count_bound(const BigInt& N);

} // namespace cubesum
