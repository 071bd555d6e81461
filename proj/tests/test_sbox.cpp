#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "prsbox/sbox.hpp"

#include <set>

using namespace prsbox;
using u64 = std::uint64_t;

TEST_CASE("exponent binding") {
    CHECK(ExponentSpec::literal(3).bind(11) == 3);
    CHECK(ExponentSpec::inverse().bind(7) == 5);
    CHECK(ExponentSpec::scaled_inverse(2).bind(11) == 8);  // 2*(11-2) mod 10
    CHECK(ExponentSpec::literal(1).describe() == "1");
    CHECK(ExponentSpec::inverse().describe() == "q-2");
    CHECK(ExponentSpec::scaled_inverse(3).describe() == "3(q-2)");
}

TEST_CASE("scaled inverse exponent equals repeated inversion") {
    FieldContext ctx = find_generator(13);
    for (u64 e : {2ull, 3ull, 5ull}) {
        u64 d_eff = ExponentSpec::scaled_inverse(e).bind(13);
        for (u64 x = 1; x < 13; ++x)
            CHECK(mod_pow(x, d_eff, 13) == mod_inv(mod_pow(x, e, 13), 13));
    }
}

TEST_CASE("validate_table") {
    CHECK(validate_table({3, {1, 1, 1}}, 7).ok);
    TableCheck bad = validate_table({3, {1, 0, 1}}, 7);
    CHECK_FALSE(bad.ok);
    CHECK(bad.bad_index == 1);
    CHECK(validate_table({2, {1, 6}}, 7).ok);
    CHECK_FALSE(validate_table({3, {1, 2}}, 7).ok);  // wrong length
    CHECK_FALSE(validate_table({2, {1, 9}}, 7).ok);  // not reduced
}

TEST_CASE("sbox_eval examples") {
    FieldContext f7 = find_generator(7);
    SBoxSpec inv2 = make_power_residue(ExponentSpec::inverse(), identity_table(f7, 2));
    CHECK(sbox_eval(inv2, 3, f7) == 2);  // 3^5 * T(3^3) = 5*6 mod 7
    CHECK(sbox_eval(inv2, 0, f7) == 0);

    SBoxSpec gkrs = make_two_exponent(3, 5);
    CHECK(sbox_eval(gkrs, 3, f7) == 5);  // 3 is a non-square: 3^5
    CHECK(sbox_eval(gkrs, 2, f7) == 1);  // 2 is a square: 2^3
    CHECK(sbox_eval(gkrs, 0, f7) == 0);
}

TEST_CASE("two-exponent eval matches the closed formula") {
    FieldContext ctx = find_generator(19);
    SBoxSpec spec = make_two_exponent(3, 5);
    u64 half = mod_inv(2, 19);
    for (u64 x = 0; x < 19; ++x) {
        u64 chi = x == 0 ? 0 : mod_pow(x, 9, 19);
        u64 lhs = mod_mul(mod_add(mod_mul(mod_pow(x, 3, 19), mod_add(1, chi, 19), 19),
                                  mod_mul(mod_pow(x, 5, 19), mod_add(1, (19 - chi) % 19, 19), 19), 19),
                          half, 19);
        CHECK(sbox_eval(spec, x, ctx) == lhs);
    }
}

TEST_CASE("sbox_table") {
    FieldContext f11 = find_generator(11);
    SBoxSpec grendel2 = make_named_family("grendel", {{"d", 2}}, f11);
    std::vector<u64> table = sbox_table(grendel2, f11);
    for (u64 x = 0; x < 11; ++x) CHECK(table[x] == mod_pow(x, 7, 11));  // x^{2+5}
    CHECK(table[0] == 0);

    FieldContext f7 = find_generator(7);
    SBoxSpec ident = make_power_residue(ExponentSpec::literal(1), {1, {1}});
    std::vector<u64> id_table = sbox_table(ident, f7);
    for (u64 x = 0; x < 7; ++x) CHECK(id_table[x] == x);
}

TEST_CASE("table agrees with pointwise eval") {
    FieldContext ctx = find_generator(31);
    std::vector<SBoxSpec> specs = {
        make_power_residue(ExponentSpec::literal(3), identity_table(ctx, 2)),
        make_power_residue(ExponentSpec::inverse(), identity_table(ctx, 6)),
        make_power_residue(ExponentSpec::scaled_inverse(2), random_injective_table(ctx, 3, 99)),
        make_two_exponent(3, 5),
    };
    for (const SBoxSpec& spec : specs) {
        std::vector<u64> table = sbox_table(spec, ctx);
        for (u64 x = 0; x < 31; ++x) CHECK(table[x] == sbox_eval(spec, x, ctx));
    }
}

TEST_CASE("is_permutation with Grendel gcd criterion") {
    FieldContext f11 = find_generator(11);
    PermutationCheck ok = is_permutation(make_named_family("grendel", {{"d", 2}}, f11), f11);
    CHECK(ok.bijective);
    REQUIRE(ok.gcd_criterion.has_value());
    CHECK(*ok.gcd_criterion);

    PermutationCheck bad = is_permutation(make_named_family("grendel", {{"d", 3}}, f11), f11);
    CHECK_FALSE(bad.bijective);
    CHECK_FALSE(*bad.gcd_criterion);

    FieldContext f7 = find_generator(7);
    CHECK(is_permutation(make_power_residue(ExponentSpec::literal(1), {1, {1}}), f7).bijective);
}

TEST_CASE("Grendel gcd criterion matches exhaustive bijectivity for all odd p <= 257") {
    // is_permutation throws internally if the two disagree
    for (u64 p = 3; p <= 257; ++p) {
        if (!is_prime(p)) continue;
        FieldContext ctx = find_generator(p);
        for (u64 d = 1; d <= 7; ++d) {
            SBoxSpec spec = make_named_family("grendel", {{"d", d}}, ctx);
            PermutationCheck check = is_permutation(spec, ctx);
            REQUIRE(check.gcd_criterion.has_value());
            CHECK(check.bijective == *check.gcd_criterion);
        }
    }
}

TEST_CASE("two-exponent gcd condition implies bijectivity, p <= 257") {
    for (u64 p = 5; p <= 257; ++p) {
        if (!is_prime(p)) continue;
        FieldContext ctx = find_generator(p);
        for (auto [dp, dm] : {std::pair<u64, u64>{3, 5}, {5, 7}, {3, 7}}) {
            if (2 * dm >= p) continue;
            PermutationCheck check = is_permutation(make_two_exponent(dp, dm), ctx);
            REQUIRE(check.gcd_sufficient.has_value());
            if (*check.gcd_sufficient) CHECK(check.bijective);
        }
    }
}

TEST_CASE("S(0) = 0 for every family") {
    FieldContext ctx = find_generator(13);
    CHECK(sbox_eval(make_power_residue(ExponentSpec::literal(4), identity_table(ctx, 3)), 0, ctx) == 0);
    CHECK(sbox_eval(make_power_residue(ExponentSpec::inverse(), identity_table(ctx, 4)), 0, ctx) == 0);
    CHECK(sbox_eval(make_power_residue(ExponentSpec::scaled_inverse(2), identity_table(ctx, 2)), 0, ctx) == 0);
    CHECK(sbox_eval(make_two_exponent(3, 5), 0, ctx) == 0);
}

TEST_CASE("named families") {
    FieldContext f11 = find_generator(11);
    SBoxSpec grendel = make_named_family("grendel", {{"d", 2}}, f11);
    CHECK(grendel.table.entries == std::vector<u64>{1, 10});

    FieldContext f7 = find_generator(7);
    SBoxSpec polocolo = make_named_family("polocolo", {{"n", 1}}, f7);
    CHECK(polocolo.d.kind == ExponentSpec::Kind::Inverse);
    CHECK(polocolo.m == 2);
    CHECK(polocolo.table.entries == std::vector<u64>{1, 6});

    CHECK_THROWS_AS(make_named_family("shifted_legendre", {{"d", 3}, {"a", 1}}, f11), std::invalid_argument);
    CHECK_THROWS_AS(make_named_family("shifted_legendre", {{"d", 3}, {"a", 10}}, f11), std::invalid_argument);
    SBoxSpec shifted = make_named_family("shifted_legendre", {{"d", 3}, {"a", 4}}, f11);
    CHECK(shifted.table.entries == std::vector<u64>{5, 3});  // 1+4, 10+4 mod 11

    CHECK_THROWS_AS(make_named_family("polocolo", {{"m", 3}}, find_generator(13)), std::invalid_argument);
    CHECK_THROWS_AS(make_named_family("polocolo", {{"n", 2}}, f11), std::invalid_argument);  // 4 does not divide 10
    CHECK_THROWS_AS(make_named_family("unknown_family", {}, f11), std::invalid_argument);
}

TEST_CASE("shallue family image condition and zero-entry rejection") {
    FieldContext f13 = find_generator(13);
    // order-3 subgroup of F_13 is {1,3,9}
    CHECK_THROWS_AS(make_named_family("shallue", {{"m", 3}, {"a", 3}}, f13), std::invalid_argument);
    CHECK_THROWS_AS(make_named_family("shallue", {{"m", 3}, {"a", 0}}, f13), std::invalid_argument);
    // a = 4 passes the image test but -4 = 9 is a residue value, so an entry vanishes
    CHECK_THROWS_AS(make_named_family("shallue", {{"m", 3}, {"a", 4}}, f13), std::invalid_argument);
    SBoxSpec ok = make_named_family("shallue", {{"m", 3}, {"a", 2}}, f13);
    CHECK(ok.d.kind == ExponentSpec::Kind::Literal);
    CHECK(ok.d.value == 1);
    std::set<u64> entries(ok.table.entries.begin(), ok.table.entries.end());
    CHECK(entries == std::set<u64>{3, 5, 11});
}

TEST_CASE("random injective tables are valid, injective and seed-deterministic") {
    FieldContext ctx = find_generator(97);
    for (u64 seed : {1ull, 2ull, 42ull}) {
        ResidueTable t = random_injective_table(ctx, 16, seed);
        CHECK(validate_table(t, 97).ok);
        std::set<u64> distinct(t.entries.begin(), t.entries.end());
        CHECK(distinct.size() == 16);
        CHECK(random_injective_table(ctx, 16, seed).entries == t.entries);
    }
    // full permutation corner: m = p-1
    FieldContext f17 = find_generator(17);
    ResidueTable t = random_injective_table(f17, 16, 7);
    std::set<u64> distinct(t.entries.begin(), t.entries.end());
    CHECK(distinct.size() == 16);
}

TEST_CASE("table diagnostics for the d=1 split") {
    // p = 13 (p % 4 == 1): identity entries {1, 12} lie in the squares
    FieldContext f13 = find_generator(13);
    SBoxSpec in = make_power_residue(ExponentSpec::literal(1), identity_table(f13, 2));
    TableDiagnostics d13 = table_diagnostics(in, f13);
    CHECK(d13.injective);
    CHECK(d13.entries_in_subgroup);
    // p = 11 (p % 4 == 3): -1 is a non-square, entries escape <g^2>
    FieldContext f11 = find_generator(11);
    SBoxSpec out = make_power_residue(ExponentSpec::literal(1), identity_table(f11, 2));
    TableDiagnostics d11 = table_diagnostics(out, f11);
    CHECK(d11.injective);
    CHECK_FALSE(d11.entries_in_subgroup);
    // constant table is not injective
    SBoxSpec flat = make_power_residue(ExponentSpec::literal(1), {2, {1, 1}});
    CHECK_FALSE(table_diagnostics(flat, f13).injective);
}
