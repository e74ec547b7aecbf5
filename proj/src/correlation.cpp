#include "bellscope/correlation.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bellscope {

std::array<int, 16> Relabeling::cell_permutation() const {
    std::array<int, 16> perm{};
    for (int i = 0; i < 16; ++i) {
        auto [a, b, x, y] = cell_of(i);
        // outcome flips act relative to the destination's settings
        a ^= a_flip[x];
        b ^= b_flip[y];
        x ^= x_swap;
        y ^= y_swap;
        if (party_swap) {
            std::swap(a, b);
            std::swap(x, y);
        }
        perm[i] = cell_index(a, b, x, y);
    }
    return perm;
}

const std::vector<Relabeling>& relabeling_group() {
    static const std::vector<Relabeling> group = [] {
        std::vector<Relabeling> g;
        g.reserve(128);
        for (int af0 = 0; af0 < 2; ++af0)
            for (int af1 = 0; af1 < 2; ++af1)
                for (int bf0 = 0; bf0 < 2; ++bf0)
                    for (int bf1 = 0; bf1 < 2; ++bf1)
                        for (int xs = 0; xs < 2; ++xs)
                            for (int ys = 0; ys < 2; ++ys)
                                for (int ps = 0; ps < 2; ++ps)
                                    g.push_back(Relabeling{{af0, af1}, {bf0, bf1}, xs, ys, ps});
        return g;
    }();
    return group;
}

int ZeroPattern::count() const { return std::popcount(mask); }

std::vector<Cell> ZeroPattern::cells() const {
    std::vector<Cell> out;
    for (int i = 0; i < 16; ++i)
        if (mask >> i & 1) out.push_back(cell_of(i));
    return out;
}

std::string to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::None: return "none";
        case ClassLabel::C1: return "1";
        case ClassLabel::C2a: return "2a";
        case ClassLabel::C2b: return "2b";
        case ClassLabel::C2c: return "2c";
        case ClassLabel::C3a: return "3a";
        case ClassLabel::C3b: return "3b";
        case ClassLabel::C4a: return "4a";
        case ClassLabel::C4b: return "4b";
        case ClassLabel::LocalByLemma1: return "local-by-lemma1";
        case ClassLabel::Unphysical: return "unphysical";
    }
    return "?";
}

ValidityReport validate(const Correlation& c, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("validate: tol must be positive");
    ValidityReport r;
    r.nonneg = true;
    for (double v : c.p)
        if (v < -tol) r.nonneg = false;

    r.normalized = true;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double s = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) s += c(a, b, x, y);
            if (std::abs(s - 1.0) > tol) r.normalized = false;
        }

    r.no_signaling = true;
    // Alice's marginal independent of y, Bob's independent of x.
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
            double m0 = c(a, 0, x, 0) + c(a, 1, x, 0);
            double m1 = c(a, 0, x, 1) + c(a, 1, x, 1);
            if (std::abs(m0 - m1) > tol) r.no_signaling = false;
        }
    for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) {
            double m0 = c(0, b, 0, y) + c(1, b, 0, y);
            double m1 = c(0, b, 1, y) + c(1, b, 1, y);
            if (std::abs(m0 - m1) > tol) r.no_signaling = false;
        }
    return r;
}

double correlator(const Correlation& c, int x, int y) {
    double s = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += ((a + b) % 2 ? -1.0 : 1.0) * c(a, b, x, y);
    return s;
}

double chsh_value(const Correlation& c) {
    double s = 0;
    for (int i = 0; i < 16; ++i) {
        auto [a, b, x, y] = cell_of(i);
        s += ((x * y + a + b + 1) % 2 ? -1.0 : 1.0) * c.p[i];
    }
    return s;
}

Correlation pr_box(int alpha, int beta, int gamma) {
    Correlation c;
    for (int i = 0; i < 16; ++i) {
        auto [a, b, x, y] = cell_of(i);
        int lhs = a ^ b;
        int rhs = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma;
        c.p[i] = lhs == rhs ? 0.5 : 0.0;
    }
    return c;
}

Correlation deterministic_point(int j) {
    if (j < 0 || j > 15) throw std::out_of_range("deterministic_point: j must be in 0..15");
    Correlation c;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int a = ((j & 1) * x) ^ ((j >> 1) & 1);
            int b = (((j >> 2) & 1) * y) ^ ((j >> 3) & 1);
            c(a, b, x, y) = 1.0;
        }
    return c;
}

Correlation uniform_point() {
    Correlation c;
    c.p.fill(0.25);
    return c;
}

Correlation mix(std::span<const std::pair<double, Correlation>> terms, double tol) {
    double wsum = 0;
    for (const auto& [w, _] : terms) {
        if (w < 0) throw std::invalid_argument("mix: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > tol) throw std::invalid_argument("mix: weights must sum to 1");
    Correlation out;
    for (const auto& [w, c] : terms)
        for (int i = 0; i < 16; ++i) out.p[i] += w * c.p[i];
    return out;
}

Correlation apply_relabeling(const Correlation& c, const Relabeling& r) {
    auto perm = r.cell_permutation();
    Correlation out;
    for (int i = 0; i < 16; ++i) out.p[i] = c.p[perm[i]];
    return out;
}

ZeroPattern zero_pattern(const Correlation& c, double tol) {
    ZeroPattern pat;
    for (int i = 0; i < 16; ++i)
        if (std::abs(c.p[i]) < tol) pat.mask |= std::uint16_t(1) << i;
    return pat;
}

namespace {

std::uint16_t permute_mask(std::uint16_t mask, const std::array<int, 16>& perm) {
    std::uint16_t out = 0;
    for (int i = 0; i < 16; ++i)
        if (mask >> perm[i] & 1) out |= std::uint16_t(1) << i;
    return out;
}

const std::vector<std::array<int, 16>>& group_permutations() {
    static const std::vector<std::array<int, 16>> perms = [] {
        std::vector<std::array<int, 16>> ps;
        ps.reserve(128);
        for (const auto& r : relabeling_group()) ps.push_back(r.cell_permutation());
        return ps;
    }();
    return perms;
}

}  // namespace

ZeroPattern canonical_pattern(ZeroPattern pat) {
    std::uint16_t best = pat.mask;
    for (const auto& perm : group_permutations()) best = std::min(best, permute_mask(pat.mask, perm));
    return ZeroPattern{best};
}

ZeroPattern class_reference_pattern(ClassLabel label) {
    ZeroPattern p;
    switch (label) {
        case ClassLabel::C1:
            p.add(0, 0, 0, 0);
            break;
        case ClassLabel::C2a:
            p.add(0, 0, 0, 0);
            p.add(1, 1, 0, 0);
            break;
        case ClassLabel::C2b:
            p.add(0, 0, 0, 0);
            p.add(1, 1, 1, 0);
            break;
        case ClassLabel::C2c:
            p.add(0, 0, 0, 0);
            p.add(1, 0, 1, 1);
            break;
        case ClassLabel::C3a:
            p.add(0, 0, 0, 0);
            p.add(1, 1, 1, 0);
            p.add(1, 1, 0, 1);
            break;
        case ClassLabel::C3b:
            p.add(0, 0, 0, 0);
            p.add(1, 1, 0, 0);
            p.add(1, 0, 1, 1);
            break;
        case ClassLabel::C4a:
            p.add(0, 0, 0, 0);
            p.add(1, 1, 1, 0);
            p.add(0, 0, 1, 1);
            p.add(1, 1, 0, 1);
            break;
        case ClassLabel::C4b:
            p.add(1, 0, 0, 0);
            p.add(0, 1, 0, 0);
            p.add(1, 0, 1, 1);
            p.add(0, 1, 1, 1);
            break;
        default:
            throw std::invalid_argument("class_reference_pattern: no pattern for this label");
    }
    return p;
}

ClassLabel classify_zero_pattern(ZeroPattern pat) {
    if (pat.mask == 0) return ClassLabel::None;
    if (pat.count() > 12) return ClassLabel::Unphysical;

    // Lemma 1: two zeros in one row (fixed y,b over all x,a) or one column
    // (fixed x,a over all y,b) of the table.
    for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
            int n = 0;
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a) n += pat.contains(a, b, x, y);
            if (n >= 2) return ClassLabel::LocalByLemma1;
        }
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            int n = 0;
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b) n += pat.contains(a, b, x, y);
            if (n >= 2) return ClassLabel::LocalByLemma1;
        }

    static const auto canon_refs = [] {
        std::vector<std::pair<std::uint16_t, ClassLabel>> refs;
        for (ClassLabel l : {ClassLabel::C1, ClassLabel::C2a, ClassLabel::C2b, ClassLabel::C2c,
                             ClassLabel::C3a, ClassLabel::C3b, ClassLabel::C4a, ClassLabel::C4b})
            refs.emplace_back(canonical_pattern(class_reference_pattern(l)).mask, l);
        return refs;
    }();
    std::uint16_t canon = canonical_pattern(pat).mask;
    for (const auto& [mask, label] : canon_refs)
        if (mask == canon) return label;
    // Unreachable for patterns with <= 4 zeros and no repeated row/column;
    // larger patterns were caught by the pigeonhole in the Lemma-1 check.
    throw std::logic_error("classify_zero_pattern: pattern outside the known classes");
}

ClassLabel classify_zero_class(const Correlation& c, double tol) {
    return classify_zero_pattern(zero_pattern(c, tol));
}

}  // namespace bellscope
