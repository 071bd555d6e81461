#include "prsbox/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prsbox {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using cplx = std::complex<double>;

AdditiveCharacter make_character(u64 p, u64 c) {
    if (p < 2) throw std::invalid_argument("make_character: p must be >= 2");
    c %= p;
    if (c == 0) throw std::invalid_argument("make_character: twist c must be nonzero mod p");
    AdditiveCharacter chi;
    chi.p = p;
    chi.c = c;
    chi.table.resize(p);
    for (u64 t = 0; t < p; ++t) {
        u64 k = mod_mul(c, t, p);
        chi.table[t] = k == 0 ? cplx{1.0, 0.0}
                              : std::polar(1.0, 2.0 * std::numbers::pi * (double)k / (double)p);
    }
    return chi;
}

cplx char_sum(const ArgumentHistogram& hist, const AdditiveCharacter& chi) {
    if (hist.p != chi.p) throw std::invalid_argument("char_sum: histogram and character disagree on p");
    if (hist.counts.size() != hist.p) throw std::invalid_argument("char_sum: histogram has wrong length");
    cplx acc{0.0, 0.0};
    for (u64 t = 0; t < hist.p; ++t)
        if (hist.counts[t] != 0) acc += (double)hist.counts[t] * chi.table[t];
    return acc;
}

namespace {

// Integer histogram reused across sums; the touched list keeps the dot
// product proportional to the domain size.
struct HistScratch {
    std::vector<u64> counts;
    std::vector<u32> touched;

    explicit HistScratch(u64 p) : counts(p, 0) { touched.reserve(1024); }

    void add(u64 t) {
        if (counts[t]++ == 0) touched.push_back((u32)t);
    }

    cplx flush(const AdditiveCharacter& chi) {
        cplx acc{0.0, 0.0};
        for (u32 t : touched) {
            acc += (double)counts[t] * chi.table[t];
            counts[t] = 0;
        }
        touched.clear();
        return acc;
    }
};

SpectrumEntry make_entry(u64 a, u64 b, cplx value) {
    return {a, b, value, std::abs(value)};
}

u64 add_mod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

// Classification tables for the d = 1 mixed-case split.
struct D1Split {
    bool active = false;
    std::vector<char> in_n0;     // x in <g^m>
    std::vector<char> is_entry;  // x equals some table entry
    std::vector<u64> inv;
};

D1Split make_d1_split(const SBoxSpec& spec, const FieldContext& ctx) {
    D1Split split;
    if (spec.family != SBoxSpec::Family::PowerResidue || spec.d.bind(ctx.p) != 1) return split;
    split.active = true;
    split.in_n0.assign(ctx.p, 0);
    for (u64 x : subgroup(ctx, spec.m).elements) split.in_n0[x] = 1;
    split.is_entry.assign(ctx.p, 0);
    for (u64 e : spec.table.entries) split.is_entry[e] = 1;
    split.inv = inverse_table(ctx.p);
    return split;
}

void offer_mixed(SpectrumReport& report, const D1Split& split, u64 a, u64 b, double abs, u64 p) {
    if (!split.active) {
        report.mixed.offer(abs, a, b);
        return;
    }
    u64 v = p - mod_mul(a, split.inv[b], p);  // -a/b, nonzero since a != 0
    if (split.is_entry[v]) report.mixed_table_hit.offer(abs, a, b);
    if (split.in_n0[v])
        report.mixed_degenerate.offer(abs, a, b);
    else
        report.mixed.offer(abs, a, b);
}

} // namespace

double correlation(const SpectrumReport& report) {
    return report.mixed.max_abs / (double)report.p;
}

SpectrumEntry walsh_point(const SBoxSpec& spec, u64 a, u64 b, const AdditiveCharacter& chi,
                          const FieldContext& ctx) {
    if (chi.p != ctx.p) throw std::invalid_argument("walsh_point: character and context disagree on p");
    std::vector<u64> table = sbox_table(spec, ctx);
    ArgumentHistogram hist{ctx.p, ctx.p, std::vector<u64>(ctx.p, 0)};
    a %= ctx.p;
    b %= ctx.p;
    for (u64 x = 0; x < ctx.p; ++x)
        hist.counts[add_mod(mod_mul(a, x, ctx.p), mod_mul(b, table[x], ctx.p), ctx.p)]++;
    return make_entry(a, b, char_sum(hist, chi));
}

SpectrumEntry walsh_point_restricted(u64 d, std::span<const u64> domain, u64 a, u64 b,
                                     const AdditiveCharacter& chi) {
    u64 p = chi.p;
    ArgumentHistogram hist{p, domain.size(), std::vector<u64>(p, 0)};
    a %= p;
    b %= p;
    for (u64 x : domain)
        hist.counts[add_mod(mod_mul(a, x, p), mod_mul(b, mod_pow(x, d, p), p), p)]++;
    return make_entry(a, b, char_sum(hist, chi));
}

SpectrumEntry walsh_point_restricted(const SBoxSpec& spec, std::span<const u64> domain, u64 a, u64 b,
                                     const AdditiveCharacter& chi, const FieldContext& ctx) {
    if (chi.p != ctx.p) throw std::invalid_argument("walsh_point_restricted: character and context disagree on p");
    std::vector<u64> table = sbox_table(spec, ctx);
    ArgumentHistogram hist{ctx.p, domain.size(), std::vector<u64>(ctx.p, 0)};
    a %= ctx.p;
    b %= ctx.p;
    for (u64 x : domain)
        hist.counts[add_mod(mod_mul(a, x, ctx.p), mod_mul(b, table[x], ctx.p), ctx.p)]++;
    return make_entry(a, b, char_sum(hist, chi));
}

SpectrumEntry kloosterman_point(const SubgroupSpec& sub, u64 a, u64 b, const AdditiveCharacter& chi,
                                u64 e) {
    if (chi.p != sub.p) throw std::invalid_argument("kloosterman_point: character and subgroup disagree on p");
    u64 p = sub.p;
    ArgumentHistogram hist{p, sub.elements.size(), std::vector<u64>(p, 0)};
    a %= p;
    b %= p;
    for (u64 x : sub.elements) {
        u64 xe = mod_pow(mod_inv(x, p), e, p);
        hist.counts[add_mod(mod_mul(a, x, p), mod_mul(b, xe, p), p)]++;
    }
    return make_entry(a, b, char_sum(hist, chi));
}

SpectrumReport kloosterman_spectrum(const SubgroupSpec& sub, const AdditiveCharacter& chi,
                                    SpectrumMode mode, u64 e, u64 brute_cap) {
    if (chi.p != sub.p) throw std::invalid_argument("kloosterman_spectrum: character and subgroup disagree on p");
    u64 p = sub.p;
    SpectrumReport report;
    report.family_id = e == 1 ? "kloosterman[m=" + std::to_string(sub.m) + "]"
                              : "kloosterman[x^-" + std::to_string(e) + ",m=" + std::to_string(sub.m) + "]";
    report.p = p;
    report.m = sub.m;

    std::size_t n = sub.elements.size();
    std::vector<u64> step(n);  // x^{-e}
    {
        std::vector<u64> inv = inverse_table(p);
        for (std::size_t i = 0; i < n; ++i) step[i] = mod_pow(inv[sub.elements[i]], e, p);
    }

    HistScratch h(p);
    auto row_sweep = [&](u64 a, bool a_zero) {
        // args = a*x, then b = 1..p-1 by adding x^{-e} per element
        std::vector<u64> args(n);
        for (std::size_t i = 0; i < n; ++i) args[i] = mod_mul(a, sub.elements[i], p);
        for (u64 b = 1; b < p; ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                args[i] = add_mod(args[i], step[i], p);
                h.add(args[i]);
            }
            double abs = std::abs(h.flush(chi));
            if (a_zero)
                report.b_only.offer(abs, 0, b);
            else
                report.mixed.offer(abs, a, b);
        }
    };

    if (mode == SpectrumMode::Reduced) {
        report.mode = "reduced";
        report.both_zero.offer((double)n, 0, 0);
        for (u64 r = 0; r < sub.m; ++r) {
            u64 a = mod_pow(sub.g, r, p);
            for (u64 x : sub.elements) h.add(mod_mul(a, x, p));
            report.a_only.offer(std::abs(h.flush(chi)), a, 0);
            row_sweep(a, false);
        }
        row_sweep(0, true);
        return report;
    }

    report.mode = "brute_force";
    if (p > brute_cap)
        throw std::invalid_argument("kloosterman_spectrum: brute force capped at p <= " + std::to_string(brute_cap));
    std::vector<u64> base(n, 0), args(n);
    for (u64 a = 0; a < p; ++a) {
        if (a > 0)
            for (std::size_t i = 0; i < n; ++i) base[i] = add_mod(base[i], sub.elements[i], p);
        args = base;
        for (u64 b = 0; b < p; ++b) {
            if (b > 0)
                for (std::size_t i = 0; i < n; ++i) args[i] = add_mod(args[i], step[i], p);
            for (std::size_t i = 0; i < n; ++i) h.add(args[i]);
            double abs = std::abs(h.flush(chi));
            if (a == 0 && b == 0)
                report.both_zero.offer(abs, 0, 0);
            else if (b == 0)
                report.a_only.offer(abs, a, 0);
            else if (a == 0)
                report.b_only.offer(abs, 0, b);
            else
                report.mixed.offer(abs, a, b);
        }
    }
    return report;
}

SpectrumReport walsh_spectrum(const SBoxSpec& spec, const AdditiveCharacter& chi, const FieldContext& ctx,
                              SpectrumMode mode, u64 brute_cap) {
    if (chi.p != ctx.p) throw std::invalid_argument("walsh_spectrum: character and context disagree on p");
    u64 p = ctx.p;
    SpectrumReport report;
    report.family_id = spec.id;
    report.p = p;
    report.m = spec.m;

    if (mode == SpectrumMode::Reduced && spec.family == SBoxSpec::Family::TwoExponentLegendre) {
        report.notice = "reduced enumeration needs a power residue spec; fell back to brute force";
        mode = SpectrumMode::BruteForce;
    }

    std::vector<u64> table = sbox_table(spec, ctx);
    D1Split split = make_d1_split(spec, ctx);
    report.split_degenerate = split.active;
    if (spec.family == SBoxSpec::Family::PowerResidue) {
        TableDiagnostics diag = table_diagnostics(spec, ctx);
        report.t_injective = diag.injective;
        report.t_entries_in_subgroup = diag.entries_in_subgroup;
    }

    HistScratch h(p);
    auto row_sweep = [&](u64 a, const std::vector<u64>& base, bool a_zero) {
        std::vector<u64> args = base;
        for (u64 b = 1; b < p; ++b) {
            for (u64 x = 0; x < p; ++x) {
                args[x] = add_mod(args[x], table[x], p);
                h.add(args[x]);
            }
            double abs = std::abs(h.flush(chi));
            if (a_zero)
                report.b_only.offer(abs, 0, b);
            else
                offer_mixed(report, split, a, b, abs, p);
        }
    };

    if (mode == SpectrumMode::Reduced) {
        report.mode = "reduced";
        report.both_zero.offer((double)p, 0, 0);
        std::vector<u64> base(p);
        for (u64 r = 0; r < spec.m; ++r) {
            u64 a = mod_pow(ctx.g, r, p);
            for (u64 x = 0; x < p; ++x) {
                base[x] = mod_mul(a, x, p);
                h.add(base[x]);
            }
            report.a_only.offer(std::abs(h.flush(chi)), a, 0);
            row_sweep(a, base, false);
        }
        std::fill(base.begin(), base.end(), 0);
        row_sweep(0, base, true);
        return report;
    }

    report.mode = "brute_force";
    if (p > brute_cap)
        throw std::invalid_argument("walsh_spectrum: brute force capped at p <= " + std::to_string(brute_cap));
    std::vector<u64> base(p, 0), args(p);
    for (u64 a = 0; a < p; ++a) {
        if (a > 0)
            for (u64 x = 0; x < p; ++x) base[x] = add_mod(base[x], x, p);
        args = base;
        for (u64 b = 0; b < p; ++b) {
            if (b > 0)
                for (u64 x = 0; x < p; ++x) args[x] = add_mod(args[x], table[x], p);
            for (u64 x = 0; x < p; ++x) h.add(args[x]);
            double abs = std::abs(h.flush(chi));
            if (a == 0 && b == 0)
                report.both_zero.offer(abs, 0, 0);
            else if (b == 0)
                report.a_only.offer(abs, a, 0);
            else if (a == 0)
                report.b_only.offer(abs, 0, b);
            else
                offer_mixed(report, split, a, b, abs, p);
        }
    }
    return report;
}

ReductionResiduals reduction_identity_check(const SubgroupSpec& sub, const AdditiveCharacter& chi,
                                            u64 a, u64 b, u64 d) {
    if (chi.p != sub.p) throw std::invalid_argument("reduction_identity_check: p mismatch");
    u64 p = sub.p;
    u64 m = sub.m;  // (q-1)/|G|
    a %= p;
    b %= p;
    double scale = (double)sub.order / (double)(p - 1);

    cplx lhs_k = kloosterman_point(sub, a, b, chi, 1).value;
    cplx lhs_w{0.0, 0.0};
    {
        HistScratch h(p);
        for (u64 x : sub.elements)
            h.add(add_mod(mod_mul(a, x, p), mod_mul(b, mod_pow(x, d, p), p), p));
        lhs_w = h.flush(chi);
    }

    // both right-hand sides run over F_p^x with power residue arguments
    u64 md = (u64)(((__uint128_t)m * d) % (p - 1));
    HistScratch hk(p), hw(p);
    for (u64 x = 1; x < p; ++x) {
        u64 xm = mod_pow(x, m, p);
        hk.add(add_mod(mod_mul(a, xm, p), mod_mul(b, mod_inv(xm, p), p), p));
        hw.add(add_mod(mod_mul(a, xm, p), mod_mul(b, mod_pow(x, md, p), p), p));
    }
    cplx rhs_k = scale * hk.flush(chi);
    cplx rhs_w = scale * hw.flush(chi);

    return {std::abs(lhs_k - rhs_k), std::abs(lhs_w - rhs_w)};
}

double orbit_identity_residual(const SubgroupSpec& sub, const AdditiveCharacter& chi, u64 a, u64 b) {
    u64 p = sub.p;
    a %= p;
    b %= p;
    if (a == 0) throw std::invalid_argument("orbit_identity_residual: a must be nonzero");
    FieldContext ctx{p, sub.g, {}};
    std::vector<u64> dlog = discrete_log_table(ctx);
    u64 j = dlog[a];
    u64 r = j % sub.m;
    u64 km = j - r;
    u64 b_reduced = mod_mul(b, mod_pow(mod_inv(sub.g, p), km, p), p);
    cplx lhs = kloosterman_point(sub, a, b, chi).value;
    cplx rhs = kloosterman_point(sub, mod_pow(sub.g, r, p), b_reduced, chi).value;
    return std::abs(lhs - rhs);
}

double efficient_spectrum_residual(const SBoxSpec& spec, const FieldContext& ctx,
                                   const AdditiveCharacter& chi, u64 a, u64 b) {
    if (spec.family != SBoxSpec::Family::PowerResidue ||
        spec.table.entries != identity_table(ctx, spec.m).entries)
        throw std::invalid_argument("efficient_spectrum_residual: needs a monomial spec (identity table)");
    u64 p = ctx.p;
    a %= p;
    b %= p;
    if (a == 0) throw std::invalid_argument("efficient_spectrum_residual: a must be nonzero");
    u64 d_eff = spec.d.bind(p);
    u64 a_inv = mod_inv(a, p);
    u64 b_reduced = mod_mul(mod_mul(b, mod_pow(a_inv, d_eff, p), p), power_residue(a_inv, spec.m, ctx), p);
    cplx lhs = walsh_point(spec, a, b, chi, ctx).value;
    cplx rhs = walsh_point(spec, 1, b_reduced, chi, ctx).value;
    return std::abs(lhs - rhs);
}

} // namespace prsbox
