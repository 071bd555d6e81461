#pragma once

#include "prsbox/field.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prsbox {

// Coefficient table of T on the order-m subgroup, indexed by coset shift:
// entries[r] = T(g^{r*(p-1)/m}). Every entry must be a nonzero residue.
struct ResidueTable {
    std::uint64_t m = 1;
    std::vector<std::uint64_t> entries;
};

struct TableCheck {
    bool ok = true;
    std::size_t bad_index = 0;
    std::string message;
};

TableCheck validate_table(const ResidueTable& table, std::uint64_t p);

// Exponent kept symbolic until a concrete p binds it, so one spec can drive
// a whole prime sweep.
struct ExponentSpec {
    enum class Kind { Literal, Inverse, ScaledInverse };
    Kind kind = Kind::Literal;
    std::uint64_t value = 1;  // d for Literal, e for ScaledInverse

    static ExponentSpec literal(std::uint64_t d) { return {Kind::Literal, d}; }
    static ExponentSpec inverse() { return {Kind::Inverse, 1}; }
    static ExponentSpec scaled_inverse(std::uint64_t e) { return {Kind::ScaledInverse, e}; }

    // Effective exponent mod p-1 on nonzero inputs.
    std::uint64_t bind(std::uint64_t p) const;
    std::string describe() const;  // "3", "q-2", "2(q-2)"
};

struct SBoxSpec {
    enum class Family { PowerResidue, TwoExponentLegendre };
    Family family = Family::PowerResidue;

    // PowerResidue: S(x) = x^d * T(x^{(p-1)/m}), S(0) = 0
    ExponentSpec d;
    std::uint64_t m = 1;
    ResidueTable table;

    // TwoExponentLegendre: S(x) = (x^{d+}(1+chi(x)) + x^{d-}(1-chi(x)))/2
    std::uint64_t d_plus = 0;
    std::uint64_t d_minus = 0;

    std::string id;
};

SBoxSpec make_power_residue(ExponentSpec d, ResidueTable table, std::string id = {});
SBoxSpec make_two_exponent(std::uint64_t d_plus, std::uint64_t d_minus, std::string id = {});

std::uint64_t sbox_eval(const SBoxSpec& spec, std::uint64_t x, const FieldContext& ctx);

// table[x] = sbox_eval(spec, x) for all x in F_p; O(p log p).
std::vector<std::uint64_t> sbox_table(const SBoxSpec& spec, const FieldContext& ctx);

struct PermutationCheck {
    bool bijective = false;
    // Grendel-shaped specs: gcd(d + (p-1)/2, p-1) == 1, equivalent to bijectivity.
    std::optional<bool> gcd_criterion;
    // Two-exponent specs: gcd(d+,p-1) == gcd(d-,p-1) == 1, sufficient for bijectivity.
    std::optional<bool> gcd_sufficient;
};

PermutationCheck is_permutation(const SBoxSpec& spec, const FieldContext& ctx);

// T diagnostics used by the d=1 spectrum split: whether the entries are
// pairwise distinct and whether they all lie in <g^m>.
struct TableDiagnostics {
    bool injective = true;
    bool entries_in_subgroup = true;
};

TableDiagnostics table_diagnostics(const SBoxSpec& spec, const FieldContext& ctx);

ResidueTable identity_table(const FieldContext& ctx, std::uint64_t m);
ResidueTable shifted_table(const FieldContext& ctx, std::uint64_t m, std::uint64_t a);
// Uniformly random injective assignment of nonzero residues per coset index,
// from a self-contained seeded generator (platform independent).
ResidueTable random_injective_table(const FieldContext& ctx, std::uint64_t m, std::uint64_t seed);

// Families from the literature: shallue, grendel, shifted_legendre, polocolo,
// scaled_inverse, grassi_two_exponent.
SBoxSpec make_named_family(const std::string& name,
                           const std::map<std::string, std::uint64_t>& params,
                           const FieldContext& ctx,
                           const std::optional<std::vector<std::uint64_t>>& explicit_table = std::nullopt);

} // namespace prsbox
