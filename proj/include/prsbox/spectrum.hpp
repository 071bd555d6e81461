#pragma once

#include "prsbox/field.hpp"
#include "prsbox/sbox.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace prsbox {

// psi(x) = exp(2*pi*i * c*x / p), tabulated over one period. The twist c
// realises every non-trivial additive character; c = 1 is the fundamental one.
struct AdditiveCharacter {
    std::uint64_t p = 0;
    std::uint64_t c = 1;
    std::vector<std::complex<double>> table;
};

AdditiveCharacter make_character(std::uint64_t p, std::uint64_t c = 1);

// counts[t] = how often the character argument t occurs over the summation
// domain. All sums are evaluated as one integer histogram plus a single
// complex dot product against the character table.
struct ArgumentHistogram {
    std::uint64_t p = 0;
    std::uint64_t domain_size = 0;
    std::vector<std::uint64_t> counts;
};

std::complex<double> char_sum(const ArgumentHistogram& hist, const AdditiveCharacter& chi);

struct SpectrumEntry {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::complex<double> value{0.0, 0.0};
    double abs = 0.0;
};

struct CaseMax {
    double max_abs = 0.0;
    std::uint64_t witness_a = 0;
    std::uint64_t witness_b = 0;
    bool present = false;

    void offer(double v, std::uint64_t a, std::uint64_t b) {
        if (!present || v > max_abs) {
            max_abs = v;
            witness_a = a;
            witness_b = b;
            present = true;
        }
    }
};

// Per-case maxima with argmax witnesses. For d = 1 power residue S-boxes the
// mixed case is split by -a/b membership in <g^m>; the proof-level condition
// (some table entry equals -a/b) is tracked separately in mixed_table_hit.
struct SpectrumReport {
    std::string family_id;
    std::uint64_t p = 0;
    std::uint64_t m = 1;
    CaseMax both_zero, a_only, b_only, mixed;
    bool split_degenerate = false;
    CaseMax mixed_degenerate;
    CaseMax mixed_table_hit;
    bool t_injective = true;
    bool t_entries_in_subgroup = true;
    std::string mode;
    std::string notice;
};

double correlation(const SpectrumReport& report);

enum class SpectrumMode { Reduced, BruteForce };

SpectrumEntry walsh_point(const SBoxSpec& spec, std::uint64_t a, std::uint64_t b,
                          const AdditiveCharacter& chi, const FieldContext& ctx);

// Sum over an explicit domain X with the monomial argument a*x + b*x^d.
SpectrumEntry walsh_point_restricted(std::uint64_t d, std::span<const std::uint64_t> domain,
                                     std::uint64_t a, std::uint64_t b, const AdditiveCharacter& chi);

SpectrumEntry walsh_point_restricted(const SBoxSpec& spec, std::span<const std::uint64_t> domain,
                                     std::uint64_t a, std::uint64_t b, const AdditiveCharacter& chi,
                                     const FieldContext& ctx);

// K(psi, G, a, b) = sum over x in G of psi(a*x + b*x^{-e}); e = 1 is the
// classical Kloosterman sum over G.
SpectrumEntry kloosterman_point(const SubgroupSpec& sub, std::uint64_t a, std::uint64_t b,
                                const AdditiveCharacter& chi, std::uint64_t e = 1);

// Full spectrum over (a, b). Reduced mode enumerates a in {g^0..g^{m-1}} x
// b in F_p^x plus the one-sided rows; maxima match the full (p-1)^2 spectrum.
SpectrumReport kloosterman_spectrum(const SubgroupSpec& sub, const AdditiveCharacter& chi,
                                    SpectrumMode mode = SpectrumMode::Reduced, std::uint64_t e = 1,
                                    std::uint64_t brute_cap = 1ull << 12);

// Reduced mode enumerates the a = 0 row plus one row per coset shift of a;
// requires a PowerResidue spec (anything else falls back to brute force with
// a notice). Brute force enumerates all (a, b) in F_p^2 and is capped.
SpectrumReport walsh_spectrum(const SBoxSpec& spec, const AdditiveCharacter& chi, const FieldContext& ctx,
                              SpectrumMode mode, std::uint64_t brute_cap = 1ull << 12);

// Residuals of the two subgroup-reduction identities: the Kloosterman sum
// over G against (|G|/(q-1)) * sum over F_q^x with power residue arguments,
// and the analogue with f = x^d. Contract: both < 1e-6 * p.
struct ReductionResiduals {
    double kloosterman = 0.0;
    double walsh = 0.0;
};

ReductionResiduals reduction_identity_check(const SubgroupSpec& sub, const AdditiveCharacter& chi,
                                            std::uint64_t a, std::uint64_t b, std::uint64_t d = 2);

// |K(psi,G,a,b) - K(psi,G,g^r,b*g^{-km})| for a = g^{km+r}, a != 0.
double orbit_identity_residual(const SubgroupSpec& sub, const AdditiveCharacter& chi,
                               std::uint64_t a, std::uint64_t b);

// |W_S(psi,a,b) - W_S(psi,1,b*a^{-d}*chi_m(a^{-1}))| for monomial-T specs,
// a != 0.
double efficient_spectrum_residual(const SBoxSpec& spec, const FieldContext& ctx,
                                   const AdditiveCharacter& chi, std::uint64_t a, std::uint64_t b);

} // namespace prsbox
