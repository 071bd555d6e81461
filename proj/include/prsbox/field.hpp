#pragma once

#include <cstdint>
#include <vector>

namespace prsbox {

// A prime p together with its smallest primitive root and the distinct
// prime factors of p-1. Immutable once built; safe to share across threads.
struct FieldContext {
    std::uint64_t p = 0;
    std::uint64_t g = 0;
    std::vector<std::uint64_t> factors;
};

// <g^m>, the unique subgroup of F_p^x of order (p-1)/m, elements ascending.
struct SubgroupSpec {
    std::uint64_t p = 0;
    std::uint64_t g = 0;
    std::uint64_t m = 1;
    std::uint64_t order = 0;
    std::vector<std::uint64_t> elements;
};

// N_r = g^r * N_0, elements ascending.
struct Coset {
    std::uint64_t r = 0;
    std::vector<std::uint64_t> elements;
};

bool is_prime(std::uint64_t n);

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t x, std::uint64_t e, std::uint64_t p);

// Inverse of x mod p, p prime. Throws std::domain_error on x = 0.
std::uint64_t mod_inv(std::uint64_t x, std::uint64_t p);

// Distinct prime factors of n, ascending, by trial division.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Smallest positive primitive root of p; deterministic. Throws if p is not
// an odd-capable prime >= 3.
FieldContext find_generator(std::uint64_t p);

// x^{(p-1)/m}, the m-th power residue map; power_residue(0) = 0.
// Requires m | p-1.
std::uint64_t power_residue(std::uint64_t x, std::uint64_t m, const FieldContext& ctx);

SubgroupSpec subgroup(const FieldContext& ctx, std::uint64_t m);
Coset coset(const SubgroupSpec& sub, std::uint64_t r);

// Membership test x in <g^m> (x != 0), i.e. x^{(p-1)/m} == 1.
bool in_subgroup(std::uint64_t x, std::uint64_t m, const FieldContext& ctx);

// dlog[g^j mod p] = j for 0 <= j <= p-2; dlog[0] = UINT64_MAX.
std::vector<std::uint64_t> discrete_log_table(const FieldContext& ctx);

// inv[x] for 1 <= x < p in O(p); inv[0] = 0 placeholder.
std::vector<std::uint64_t> inverse_table(std::uint64_t p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

} // namespace prsbox
