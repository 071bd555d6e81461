#include "prsbox/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prsbox {

using u64 = std::uint64_t;
using u128 = __uint128_t;

u64 mod_add(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

u64 mod_mul(u64 a, u64 b, u64 p) {
    return (u64)(((u128)a * b) % p);
}

u64 mod_pow(u64 x, u64 e, u64 p) {
    u64 base = x % p;
    u64 out = 1 % p;
    while (e > 0) {
        if (e & 1) out = mod_mul(out, base, p);
        base = mod_mul(base, base, p);
        e >>= 1;
    }
    return out;
}

u64 mod_inv(u64 x, u64 p) {
    if (x % p == 0) throw std::domain_error("no inverse of zero");
    return mod_pow(x, p - 2, p);
}

u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mod_mul(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // composite witness found
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // deterministic witness set for all 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (miller_rabin_witness(n, a, d, r)) return false;
    return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; (u128)q * q <= n; q += (q == 2) ? 1 : 2) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

FieldContext find_generator(u64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("find_generator: p must be a prime >= 3, got " + std::to_string(p));
    FieldContext ctx;
    ctx.p = p;
    ctx.factors = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool primitive = true;
        for (u64 q : ctx.factors) {
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            ctx.g = g;
            return ctx;
        }
    }
    throw std::logic_error("find_generator: no generator found (unreachable for prime p)");
}

u64 power_residue(u64 x, u64 m, const FieldContext& ctx) {
    if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("power_residue: m must divide p-1");
    if (x % ctx.p == 0) return 0;
    return mod_pow(x, (ctx.p - 1) / m, ctx.p);
}

SubgroupSpec subgroup(const FieldContext& ctx, u64 m) {
    if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("subgroup: m must divide p-1");
    SubgroupSpec sub;
    sub.p = ctx.p;
    sub.g = ctx.g;
    sub.m = m;
    sub.order = (ctx.p - 1) / m;
    sub.elements.reserve(sub.order);
    u64 step = mod_pow(ctx.g, m, ctx.p);
    u64 cur = 1;
    for (u64 k = 0; k < sub.order; ++k) {
        sub.elements.push_back(cur);
        cur = mod_mul(cur, step, ctx.p);
    }
    std::sort(sub.elements.begin(), sub.elements.end());
    return sub;
}

Coset coset(const SubgroupSpec& sub, u64 r) {
    if (r >= sub.m) throw std::invalid_argument("coset: shift r must satisfy 0 <= r < m");
    Coset out;
    out.r = r;
    out.elements.reserve(sub.elements.size());
    u64 shift = mod_pow(sub.g, r, sub.p);
    for (u64 x : sub.elements) out.elements.push_back(mod_mul(shift, x, sub.p));
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

bool in_subgroup(u64 x, u64 m, const FieldContext& ctx) {
    if (x % ctx.p == 0) return false;
    if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("in_subgroup: m must divide p-1");
    return mod_pow(x, (ctx.p - 1) / m, ctx.p) == 1;
}

std::vector<u64> discrete_log_table(const FieldContext& ctx) {
    std::vector<u64> dlog(ctx.p, ~0ull);
    u64 cur = 1;
    for (u64 j = 0; j + 1 < ctx.p; ++j) {
        dlog[cur] = j;
        cur = mod_mul(cur, ctx.g, ctx.p);
    }
    return dlog;
}

std::vector<u64> inverse_table(u64 p) {
    std::vector<u64> inv(p, 0);
    if (p > 1) inv[1] = 1;
    for (u64 x = 2; x < p; ++x) inv[x] = mod_mul(p - p / x, inv[p % x], p);
    return inv;
}

} // namespace prsbox
