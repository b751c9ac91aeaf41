#include "cofil/growth.hpp"

#include <algorithm>

#include "cofil/errors.hpp"

namespace cofil {

std::string growth_kind_name(GrowthKind k) {
    switch (k) {
        case GrowthKind::Polynomial: return "polynomial";
        case GrowthKind::QuasiPolynomial: return "quasi-polynomial";
        case GrowthKind::Subpolynomial: return "subpolynomial";
        case GrowthKind::Superpolynomial: return "superpolynomial";
        case GrowthKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<std::pair<uint32_t, uint64_t>> dimension_sequence(const ModuleFamily& family,
                                                              uint32_t dmax) {
    std::vector<std::pair<uint32_t, uint64_t>> out;
    for (uint32_t d = 0; d <= dmax; ++d) out.emplace_back(d, family.piece_dim(d));
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].second < out[i - 1].second)
            throw CrossCheckFailure("dimension sequence is not monotone");
    return out;
}

std::vector<std::pair<uint32_t, uint64_t>> dimension_sequence(const Comodule& m, uint32_t dmax) {
    std::vector<std::pair<uint32_t, uint64_t>> out;
    for (uint32_t d = 0; d <= dmax; ++d)
        out.emplace_back(d, filtration_piece(m, d).space.dim());
    return out;
}

namespace {

struct ClassFit {
    uint32_t degree = 0;
    BigInt top_diff = 0;  // the stabilized degree-th difference
    size_t window = 0;
};

// smallest e whose e-th differences are constant on the tail of the class
// series.  The certified window is max(4, 20% of the class); constancy is
// additionally required across the whole second half of the difference
// series, so a plateau after a late jump cannot masquerade as a degree-0 fit.
bool fit_class(const std::vector<uint64_t>& ys, ClassFit& out) {
    size_t n = ys.size();
    size_t w = std::max<size_t>(4, (n + 4) / 5);
    std::vector<BigInt> cur(ys.begin(), ys.end());
    for (uint32_t e = 0; e <= 8; ++e) {
        size_t len = cur.size();
        if (len < w) return false;
        size_t span = std::max(w, (len + 1) / 2);
        span = std::min(span, len);
        bool stable = true;
        for (size_t i = len - span; i + 1 < len; ++i)
            if (cur[i] != cur[i + 1]) { stable = false; break; }
        if (stable) {
            out.degree = e;
            out.top_diff = cur.back();
            out.window = span;
            return true;
        }
        std::vector<BigInt> next(len - 1);
        for (size_t i = 0; i + 1 < len; ++i) next[i] = cur[i + 1] - cur[i];
        cur = std::move(next);
    }
    return false;
}

BigInt factorial(uint32_t n) {
    BigInt f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt ipow(uint32_t b, uint32_t e) {
    BigInt r = 1;
    for (uint32_t i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

GrowthProfile fit_cofinite_type(const std::vector<std::pair<uint32_t, uint64_t>>& dims) {
    if (dims.size() < 8) throw ValidationError("cofinite-type fit needs at least 8 points");
    for (size_t i = 1; i < dims.size(); ++i)
        if (dims[i].first != dims[i - 1].first + 1)
            throw ValidationError("dimension sequence must be sampled at consecutive degrees");
    GrowthProfile prof;
    prof.dims = dims;

    for (uint32_t period = 1; period <= 12; ++period) {
        bool ok = true;
        uint32_t degree = 0;
        Rational leading;
        size_t window = 0;
        for (uint32_t a = 0; a < period && ok; ++a) {
            std::vector<uint64_t> ys;
            for (const auto& [d, v] : dims)
                if (d % period == a) ys.push_back(v);
            ClassFit fit;
            if (!fit_class(ys, fit)) {
                ok = false;
                break;
            }
            // class polynomial s(a + period k) has leading gamma k^e with
            // gamma = top_diff / e!; in d this contributes gamma / period^e
            Rational c = Rational(fit.top_diff, factorial(fit.degree)) /
                         Rational(ipow(period, fit.degree), BigInt(1));
            if (a == 0) {
                degree = fit.degree;
                leading = c;
                window = fit.window;
            } else if (fit.degree != degree || !(c == leading)) {
                ok = false;
            }
            window = std::min(window, fit.window);
        }
        if (ok) {
            prof.kind = period == 1 ? GrowthKind::Polynomial : GrowthKind::QuasiPolynomial;
            prof.degree = degree;
            prof.leading = leading;
            prof.period = period;
            prof.window = window;
            return prof;
        }
    }

    // no polynomial structure in the data: classify by the increments
    std::vector<uint32_t> jump_pos;
    std::vector<int64_t> jump_size;
    for (size_t i = 1; i < dims.size(); ++i) {
        int64_t delta = (int64_t)dims[i].second - (int64_t)dims[i - 1].second;
        if (delta != 0) {
            jump_pos.push_back(dims[i].first);
            jump_size.push_back(delta);
        }
    }
    size_t m = jump_pos.size();
    auto last_strictly_increasing = [](const auto& v, size_t count) {
        if (v.size() < count) return false;
        for (size_t i = v.size() - count; i + 1 < v.size(); ++i)
            if (!(v[i] < v[i + 1])) return false;
        return true;
    };
    // superpolynomial needs more than growing increments: a polynomial of
    // degree >= 2 also has those, with increment ratios falling towards 1.
    // Demand nondecreasing increment ratios at the tail (exact cross-products).
    auto ratios_nondecreasing = [&]() {
        if (m < 4) return false;
        BigInt s0(jump_size[m - 4]), s1(jump_size[m - 3]), s2(jump_size[m - 2]),
            s3(jump_size[m - 1]);
        return s2 * s0 >= s1 * s1 && s3 * s1 >= s2 * s2;
    };
    if (m >= 4 && last_strictly_increasing(jump_size, 3) && ratios_nondecreasing()) {
        prof.kind = GrowthKind::Superpolynomial;
        prof.note = "increment sizes grow with nondecreasing ratios";
        return prof;
    }
    if (m >= 4) {
        std::vector<uint32_t> gaps;
        for (size_t i = 1; i < m; ++i) gaps.push_back(jump_pos[i] - jump_pos[i - 1]);
        int64_t early = *std::max_element(jump_size.begin(), jump_size.begin() + m / 2);
        int64_t late = *std::max_element(jump_size.begin() + m / 2, jump_size.end());
        if (last_strictly_increasing(gaps, 3) && late <= early) {
            prof.kind = GrowthKind::Subpolynomial;
            prof.note = "increments become rarer while staying bounded";
            return prof;
        }
    }
    prof.kind = GrowthKind::Inconclusive;
    prof.note = "no stabilizing difference order within the data window";
    return prof;
}

std::vector<CofiniteRecord> cofinite_check(const ModuleFamily& family, uint32_t dmax,
                                           const std::vector<uint32_t>& caps) {
    if (caps.size() < 3) throw ValidationError("cofinite check needs a window of 3 caps");
    std::vector<Comodule> pieces;
    for (uint32_t c : caps) pieces.push_back(family.piece(c));
    std::vector<CofiniteRecord> out;
    for (uint32_t d = 0; d <= dmax; ++d) {
        CofiniteRecord rec;
        rec.d = d;
        for (const auto& p : pieces)
            rec.dims_at_caps.push_back(filtration_piece(p, d).space.dim());
        rec.cofinite = std::all_of(rec.dims_at_caps.begin(), rec.dims_at_caps.end(),
                                   [&](uint64_t v) { return v == rec.dims_at_caps[0]; });
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace cofil
