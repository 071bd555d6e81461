#include "prsbox/sbox.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace prsbox {

using u64 = std::uint64_t;
using u128 = __uint128_t;

u64 ExponentSpec::bind(u64 p) const {
    switch (kind) {
        case Kind::Literal: {
            u64 d = value % (p - 1);
            return d == 0 ? p - 1 : d;  // x^{k(p-1)} = 1 on nonzero inputs
        }
        case Kind::Inverse:
            return p - 2;
        case Kind::ScaledInverse:
            return (u64)(((u128)value * (p - 2)) % (p - 1));
    }
    throw std::logic_error("ExponentSpec::bind: bad kind");
}

std::string ExponentSpec::describe() const {
    switch (kind) {
        case Kind::Literal: return std::to_string(value);
        case Kind::Inverse: return "q-2";
        case Kind::ScaledInverse: return std::to_string(value) + "(q-2)";
    }
    return "?";
}

TableCheck validate_table(const ResidueTable& table, u64 p) {
    if (table.entries.size() != table.m) {
        return {false, table.entries.size(),
                "table has " + std::to_string(table.entries.size()) + " entries, expected m = " + std::to_string(table.m)};
    }
    for (std::size_t r = 0; r < table.entries.size(); ++r) {
        u64 e = table.entries[r];
        if (e == 0 || e >= p) {
            return {false, r, "entry " + std::to_string(e) + " at index " + std::to_string(r) +
                                  (e == 0 ? " is zero" : " is not a canonical nonzero residue")};
        }
    }
    return {};
}

SBoxSpec make_power_residue(ExponentSpec d, ResidueTable table, std::string id) {
    SBoxSpec spec;
    spec.family = SBoxSpec::Family::PowerResidue;
    spec.d = d;
    spec.m = table.m;
    spec.table = std::move(table);
    spec.id = id.empty() ? "power[" + d.describe() + ",m=" + std::to_string(spec.m) + "]" : std::move(id);
    return spec;
}

SBoxSpec make_two_exponent(u64 d_plus, u64 d_minus, std::string id) {
    if (d_plus < 2 || d_minus < 2) throw std::invalid_argument("make_two_exponent: exponents must be > 1");
    SBoxSpec spec;
    spec.family = SBoxSpec::Family::TwoExponentLegendre;
    spec.m = 2;
    spec.d_plus = d_plus;
    spec.d_minus = d_minus;
    spec.id = id.empty() ? "gkrs[" + std::to_string(d_plus) + "," + std::to_string(d_minus) + "]" : std::move(id);
    return spec;
}

namespace {

void check_spec(const SBoxSpec& spec, const FieldContext& ctx) {
    if (spec.family == SBoxSpec::Family::PowerResidue) {
        if (spec.m == 0 || (ctx.p - 1) % spec.m != 0)
            throw std::invalid_argument("sbox: m = " + std::to_string(spec.m) + " does not divide p-1");
        TableCheck check = validate_table(spec.table, ctx.p);
        if (!check.ok) throw std::invalid_argument("sbox: " + check.message);
    } else {
        if (ctx.p % 2 == 0) throw std::invalid_argument("sbox: two-exponent family needs odd p");
        if (mod_mul(spec.d_plus % ctx.p, spec.d_minus % ctx.p, ctx.p) == 0)
            throw std::invalid_argument("sbox: gcd(d+ * d-, p) != 1");
    }
}

} // namespace

u64 sbox_eval(const SBoxSpec& spec, u64 x, const FieldContext& ctx) {
    check_spec(spec, ctx);
    x %= ctx.p;
    if (x == 0) return 0;
    if (spec.family == SBoxSpec::Family::PowerResidue) {
        u64 y = power_residue(x, spec.m, ctx);
        u64 step = mod_pow(ctx.g, (ctx.p - 1) / spec.m, ctx.p);
        u64 cur = 1;
        u64 r = 0;
        while (cur != y) {
            cur = mod_mul(cur, step, ctx.p);
            if (++r >= spec.m) throw std::logic_error("sbox_eval: residue not in order-m subgroup");
        }
        return mod_mul(mod_pow(x, spec.d.bind(ctx.p), ctx.p), spec.table.entries[r], ctx.p);
    }
    u64 chi = mod_pow(x, (ctx.p - 1) / 2, ctx.p);
    return mod_pow(x, chi == 1 ? spec.d_plus : spec.d_minus, ctx.p);
}

std::vector<u64> sbox_table(const SBoxSpec& spec, const FieldContext& ctx) {
    check_spec(spec, ctx);
    std::vector<u64> table(ctx.p, 0);
    if (spec.family == SBoxSpec::Family::PowerResidue) {
        u64 d_eff = spec.d.bind(ctx.p);
        // walk x = g^j; the coset shift of g^j is j mod m
        u64 x = 1;
        for (u64 j = 0; j + 1 < ctx.p; ++j) {
            table[x] = mod_mul(mod_pow(x, d_eff, ctx.p), spec.table.entries[j % spec.m], ctx.p);
            x = mod_mul(x, ctx.g, ctx.p);
        }
    } else {
        for (u64 x = 1; x < ctx.p; ++x) table[x] = sbox_eval(spec, x, ctx);
    }
    return table;
}

PermutationCheck is_permutation(const SBoxSpec& spec, const FieldContext& ctx) {
    PermutationCheck out;
    std::vector<u64> table = sbox_table(spec, ctx);
    std::vector<bool> seen(ctx.p, false);
    out.bijective = true;
    for (u64 v : table) {
        if (seen[v]) {
            out.bijective = false;
            break;
        }
        seen[v] = true;
    }
    if (spec.family == SBoxSpec::Family::PowerResidue && spec.d.kind == ExponentSpec::Kind::Literal &&
        spec.m == 2 && spec.table.entries == std::vector<u64>{1, ctx.p - 1}) {
        // Grendel shape: S(x) = x^{d + (p-1)/2}
        bool gcd_ok = gcd_u64(spec.d.value % (ctx.p - 1) + (ctx.p - 1) / 2, ctx.p - 1) == 1;
        out.gcd_criterion = gcd_ok;
        if (gcd_ok != out.bijective)
            throw std::logic_error("is_permutation: gcd criterion disagrees with exhaustive check");
    }
    if (spec.family == SBoxSpec::Family::TwoExponentLegendre) {
        bool gcd_ok = gcd_u64(spec.d_plus, ctx.p - 1) == 1 && gcd_u64(spec.d_minus, ctx.p - 1) == 1;
        out.gcd_sufficient = gcd_ok;
        if (gcd_ok && !out.bijective)
            throw std::logic_error("is_permutation: two-exponent gcd condition holds but map is not bijective");
    }
    return out;
}

TableDiagnostics table_diagnostics(const SBoxSpec& spec, const FieldContext& ctx) {
    TableDiagnostics diag;
    if (spec.family != SBoxSpec::Family::PowerResidue) return diag;
    std::set<u64> values;
    for (u64 e : spec.table.entries) {
        if (!values.insert(e).second) diag.injective = false;
        if (e == 0 || !in_subgroup(e, spec.m, ctx)) diag.entries_in_subgroup = false;
    }
    return diag;
}

ResidueTable identity_table(const FieldContext& ctx, u64 m) {
    if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("identity_table: m must divide p-1");
    ResidueTable table;
    table.m = m;
    u64 step = mod_pow(ctx.g, (ctx.p - 1) / m, ctx.p);
    u64 cur = 1;
    for (u64 r = 0; r < m; ++r) {
        table.entries.push_back(cur);
        cur = mod_mul(cur, step, ctx.p);
    }
    return table;
}

ResidueTable shifted_table(const FieldContext& ctx, u64 m, u64 a) {
    ResidueTable table = identity_table(ctx, m);
    for (u64& e : table.entries) e = mod_add(e, a % ctx.p, ctx.p);
    return table;
}

namespace {

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

ResidueTable random_injective_table(const FieldContext& ctx, u64 m, u64 seed) {
    if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("random_injective_table: m must divide p-1");
    ResidueTable table;
    table.m = m;
    u64 state = seed ^ (ctx.p * 0x9e3779b97f4a7c15ull) ^ (m << 17);
    std::set<u64> used;
    while (table.entries.size() < m) {
        u64 v = 1 + splitmix64(state) % (ctx.p - 1);
        if (used.insert(v).second) table.entries.push_back(v);
    }
    return table;
}

SBoxSpec make_named_family(const std::string& name, const std::map<std::string, u64>& params,
                           const FieldContext& ctx,
                           const std::optional<std::vector<u64>>& explicit_table) {
    auto need = [&](const std::string& key) -> u64 {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("family " + name + ": missing parameter '" + key + "'");
        return it->second;
    };
    auto table_or = [&](u64 m, ResidueTable fallback) -> ResidueTable {
        if (!explicit_table) return fallback;
        ResidueTable t{m, *explicit_table};
        TableCheck check = validate_table(t, ctx.p);
        if (!check.ok) throw std::invalid_argument("family " + name + ": " + check.message);
        return t;
    };

    if (name == "shallue") {
        u64 m = need("m");
        u64 a = need("a") % ctx.p;
        if (m == 0 || (ctx.p - 1) % m != 0) throw std::invalid_argument("family shallue: m must divide p-1");
        // a must avoid the image of the residue symbol (order-m subgroup and 0)
        if (a == 0 || mod_pow(a, m, ctx.p) == 1)
            throw std::invalid_argument("family shallue: a lies in the image of the residue symbol");
        ResidueTable t = shifted_table(ctx, m, a);
        TableCheck check = validate_table(t, ctx.p);
        if (!check.ok) throw std::invalid_argument("family shallue: " + check.message);
        return make_power_residue(ExponentSpec::literal(1), std::move(t), "shallue[m=" + std::to_string(m) + "]");
    }
    if (name == "grendel") {
        u64 d = need("d");
        return make_power_residue(ExponentSpec::literal(d), identity_table(ctx, 2),
                                  "grendel[d=" + std::to_string(d) + "]");
    }
    if (name == "shifted_legendre") {
        u64 d = need("d");
        u64 a = need("a") % ctx.p;
        if (a == 1 || a == ctx.p - 1)
            throw std::invalid_argument("family shifted_legendre: a must avoid +-1");
        return make_power_residue(ExponentSpec::literal(d), shifted_table(ctx, 2, a),
                                  "shifted_legendre[d=" + std::to_string(d) + "]");
    }
    if (name == "polocolo") {
        u64 m;
        if (params.count("n")) {
            u64 n = need("n");
            if (n == 0 || n >= 63) throw std::invalid_argument("family polocolo: n out of range");
            m = 1ull << n;
        } else {
            m = need("m");
            if ((m & (m - 1)) != 0 || m < 2)
                throw std::invalid_argument("family polocolo: m must be a power of two");
        }
        if ((ctx.p - 1) % m != 0)
            throw std::invalid_argument("family polocolo: 2^n must divide p-1");
        return make_power_residue(ExponentSpec::inverse(), table_or(m, identity_table(ctx, m)),
                                  "polocolo[m=" + std::to_string(m) + "]");
    }
    if (name == "scaled_inverse") {
        u64 e = need("e");
        u64 m = need("m");
        if (e < 2 || m < 2) throw std::invalid_argument("family scaled_inverse: e and m must be > 1");
        return make_power_residue(ExponentSpec::scaled_inverse(e), table_or(m, identity_table(ctx, m)),
                                  "scaled_inverse[e=" + std::to_string(e) + ",m=" + std::to_string(m) + "]");
    }
    if (name == "grassi_two_exponent") {
        return make_two_exponent(need("d_plus"), need("d_minus"));
    }
    throw std::invalid_argument("unknown family '" + name +
                                "' (expected shallue, grendel, shifted_legendre, polocolo, scaled_inverse, grassi_two_exponent)");
}

} // namespace prsbox
