#include "simbench/sdc_prob.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "simbench/rng.hpp"

namespace simbench::sdc {
namespace {

void check_bounds(unsigned n, unsigned i) {
    if (i > n) throw std::invalid_argument("draw size exceeds universe size");
}

DiscretePmf from_dense(std::vector<double> dense, std::int64_t n, std::int64_t i,
                       std::int64_t j, std::string mode) {
    DiscretePmf pmf;
    pmf.n = n;
    pmf.i = i;
    pmf.j = j;
    pmf.mode = std::move(mode);
    for (std::size_t v = 0; v < dense.size(); ++v) {
        if (dense[v] != 0.0) {
            pmf.support.push_back(static_cast<std::int64_t>(v));
            pmf.probs.push_back(dense[v]);
        }
    }
    return pmf;
}

// Dense pmf of H(N, M, r) over x = 0..min(r, M).
std::vector<double> hypergeom_dense(unsigned N, unsigned M, unsigned r) {
    std::vector<double> out(std::min(r, M) + 1, 0.0);
    for (unsigned x = 0; x < out.size(); ++x) out[x] = hypergeom_pmf(N, M, r, x);
    return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (a[x] == 0.0) continue;
        for (std::size_t y = 0; y < b.size(); ++y) out[x + y] += a[x] * b[y];
    }
    return out;
}

}  // namespace

double DiscretePmf::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double DiscretePmf::mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
        s += static_cast<double>(support[k]) * probs[k];
    return s;
}

double DiscretePmf::at(std::int64_t value) const {
    auto it = std::lower_bound(support.begin(), support.end(), value);
    if (it == support.end() || *it != value) return 0.0;
    return probs[static_cast<std::size_t>(it - support.begin())];
}

std::uint64_t binom_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n > 64) throw std::invalid_argument("binom_u64 handles n <= 64 only");
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (unsigned d = 1; d <= k; ++d) {
        result = result * (n - k + d) / d;  // exact: product of d consecutive ints
    }
    return static_cast<std::uint64_t>(result);
}

double hypergeom_pmf(unsigned N, unsigned M, unsigned r, unsigned x) {
    if (M > N || r > N) throw std::invalid_argument("hypergeom_pmf: need M <= N and r <= N");
    if (x > r || x > M || r - x > N - M) return 0.0;
    if (N <= 64) {
        unsigned __int128 num = static_cast<unsigned __int128>(binom_u64(M, x)) *
                                binom_u64(N - M, r - x);
        long double den = static_cast<long double>(binom_u64(N, r));
        return static_cast<double>(static_cast<long double>(num) / den);
    }
    auto lb = [](unsigned a, unsigned b) {
        return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
    };
    return std::exp(lb(M, x) + lb(N - M, r - x) - lb(N, r));
}

DiscretePmf unique_count_pmf(unsigned n, unsigned i) {
    check_bounds(n, i);
    // X = |S1 ∩ S2| ~ H(n, n-i, i); U = n - X.
    std::vector<double> dense(n + 1, 0.0);
    unsigned x_max = std::min(i, n - i);
    for (unsigned x = 0; x <= x_max; ++x)
        dense[n - x] = hypergeom_pmf(n, n - i, i, x);
    return from_dense(std::move(dense), n, i, -1, "unique-count");
}

double expected_unique(unsigned n, unsigned i) {
    check_bounds(n, i);
    double dn = n;
    return dn - static_cast<double>(i) * (dn - i) / dn;
}

DiscretePmf semantic_intersection_pmf(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    DiscretePmf ui = unique_count_pmf(n, i);
    DiscretePmf uj = unique_count_pmf(n, j);
    std::vector<double> dense(n + 1, 0.0);
    for (std::size_t a = 0; a < ui.support.size(); ++a) {
        unsigned u_i = static_cast<unsigned>(ui.support[a]);
        double pa = ui.probs[a];
        if (pa == 0.0) continue;
        for (std::size_t b = 0; b < uj.support.size(); ++b) {
            unsigned u_j = static_cast<unsigned>(uj.support[b]);
            double w = pa * uj.probs[b];
            if (w == 0.0) continue;
            // Z | (u_i, u_j) ~ H(n, u_j, u_i)
            unsigned z_lo = u_i + u_j > n ? u_i + u_j - n : 0;
            unsigned z_hi = std::min(u_i, u_j);
            for (unsigned z = z_lo; z <= z_hi; ++z)
                dense[z] += w * hypergeom_pmf(n, u_j, u_i, z);
        }
    }
    return from_dense(std::move(dense), n, i, j, "semantic");
}

double expected_intersection_semantic(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    double dn = n, di = i, dj = j;
    return dn - (di * (dn - di) + dj * (dn - dj) -
                 di * dj * (dn - di) * (dn - dj) / (dn * dn)) /
                    dn;
}

double sdc_distance_approx(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    double dn = n, di = i, dj = j;
    return (di * (dn - di) + dj * (dn - dj)) / (dn * dn);
}

DiscretePmf nonsemantic_intersection_pmf(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    auto z1 = hypergeom_dense(n, i, j);          // overlap of the first halves
    auto z2 = hypergeom_dense(n, n - i, n - j);  // overlap of the second halves
    return from_dense(convolve(z1, z2), n, i, j, "nonsemantic");
}

double expected_intersection_nonsemantic(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    double dn = n, di = i, dj = j;
    return di * dj / dn + (dn - di) * (dn - dj) / dn;
}

double avd_distance(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("avd_distance: empty multiset");
    std::map<std::int64_t, int> in_a, in_b;
    for (auto v : a) in_a[v]++;
    for (auto v : b) in_b[v]++;
    std::size_t a_hits = 0, b_hits = 0;
    for (auto v : a)
        if (in_b.count(v)) ++a_hits;
    for (auto v : b)
        if (in_a.count(v)) ++b_hits;
    double fwd = 1.0 - static_cast<double>(a_hits) / static_cast<double>(a.size());
    double bwd = 1.0 - static_cast<double>(b_hits) / static_cast<double>(b.size());
    return 0.5 * (fwd + bwd);
}

DiscretePmf nondistributional_semantic_pmf(unsigned n, unsigned i, unsigned j) {
    check_bounds(n, i);
    check_bounds(n, j);
    DiscretePmf ui = unique_count_pmf(n, i);
    DiscretePmf uj = unique_count_pmf(n, j);
    // Sum of the four per-half match counts; the similarity is (sum)/2, so
    // the returned support is the doubled lattice: value = 2z = sum.
    std::vector<double> dense(4 * static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t a = 0; a < ui.support.size(); ++a) {
        unsigned u_i = static_cast<unsigned>(ui.support[a]);
        for (std::size_t b = 0; b < uj.support.size(); ++b) {
            unsigned u_j = static_cast<unsigned>(uj.support[b]);
            double w = ui.probs[a] * uj.probs[b];
            if (w == 0.0) continue;
            auto side_i = convolve(hypergeom_dense(n, u_j, i),
                                   hypergeom_dense(n, u_j, n - i));
            auto side_j = convolve(hypergeom_dense(n, u_i, j),
                                   hypergeom_dense(n, u_i, n - j));
            auto sum = convolve(side_i, side_j);
            for (std::size_t s = 0; s < sum.size(); ++s) dense[s] += w * sum[s];
        }
    }
    return from_dense(std::move(dense), n, i, j, "nondistributional-semantic-2z");
}

std::vector<std::int64_t> DoubleLotterySample::multiset() const {
    std::vector<std::int64_t> all(first_draw);
    all.insert(all.end(), second_draw.begin(), second_draw.end());
    return all;
}

DoubleLotterySample double_lottery_sample(unsigned n, unsigned i, LotteryMode mode,
                                          std::uint64_t seed) {
    check_bounds(n, i);
    Rng rng(seed);
    std::int64_t first_base = mode == LotteryMode::semantic ? 1 : n + 1;
    std::int64_t second_base = mode == LotteryMode::semantic ? 1 : 2 * static_cast<std::int64_t>(n) + 1;
    DoubleLotterySample s;
    for (std::size_t idx : sample_without_replacement(n, i, rng))
        s.first_draw.push_back(first_base + static_cast<std::int64_t>(idx));
    for (std::size_t idx : sample_without_replacement(n, n - i, rng))
        s.second_draw.push_back(second_base + static_cast<std::int64_t>(idx));
    return s;
}

namespace {

// Bitmask double lottery for n <= 64: one mask per draw.
struct MaskSample {
    std::uint64_t first = 0, second = 0;
    std::uint64_t uniq() const { return first | second; }
};

MaskSample draw_masks(unsigned n, unsigned i, Rng& rng) {
    MaskSample m;
    for (std::size_t idx : sample_without_replacement(n, i, rng))
        m.first |= (1ULL << idx);
    for (std::size_t idx : sample_without_replacement(n, n - i, rng))
        m.second |= (1ULL << idx);
    return m;
}

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace

DiscretePmf monte_carlo_intersection(unsigned n, unsigned i, unsigned j, LotteryMode mode,
                                     IntersectionKind kind, std::size_t trials,
                                     std::uint64_t seed) {
    check_bounds(n, i);
    check_bounds(n, j);
    if (n > 64) throw std::invalid_argument("monte_carlo_intersection handles n <= 64");
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    Rng rng(derive_seed(seed, "mc-intersection", (static_cast<std::uint64_t>(i) << 32) | j));

    std::map<std::int64_t, std::size_t> counts;
    const bool semantic = mode == LotteryMode::semantic;
    for (std::size_t t = 0; t < trials; ++t) {
        MaskSample si = draw_masks(n, i, rng);
        MaskSample sj = draw_masks(n, j, rng);
        std::int64_t value;
        if (kind == IntersectionKind::set_intersection) {
            if (semantic) {
                value = popcount(si.uniq() & sj.uniq());
            } else {
                // Disjoint universes: halves can only meet their counterparts.
                value = popcount(si.first & sj.first) + popcount(si.second & sj.second);
            }
        } else {
            // 2 * n * (1 - d_AVD): per-element nearest-match counts, doubled
            // to stay on an integer lattice.
            std::uint64_t uj_mask, ui_mask;
            if (semantic) {
                uj_mask = sj.uniq();
                ui_mask = si.uniq();
                value = popcount(si.first & uj_mask) + popcount(si.second & uj_mask) +
                        popcount(sj.first & ui_mask) + popcount(sj.second & ui_mask);
            } else {
                value = 2 * (popcount(si.first & sj.first) + popcount(si.second & sj.second));
            }
        }
        counts[value]++;
    }

    DiscretePmf pmf;
    pmf.n = n;
    pmf.i = i;
    pmf.j = j;
    pmf.mode = std::string("monte-carlo-") + (semantic ? "semantic" : "nonsemantic") +
               (kind == IntersectionKind::avd ? "-avd-2z" : "");
    for (const auto& [v, c] : counts) {
        pmf.support.push_back(v);
        pmf.probs.push_back(static_cast<double>(c) / static_cast<double>(trials));
    }
    return pmf;
}

double total_variation(const DiscretePmf& p, const DiscretePmf& q) {
    double tv = 0.0;
    std::size_t a = 0, b = 0;
    while (a < p.support.size() || b < q.support.size()) {
        std::int64_t va = a < p.support.size() ? p.support[a] : INT64_MAX;
        std::int64_t vb = b < q.support.size() ? q.support[b] : INT64_MAX;
        if (va < vb) {
            tv += p.probs[a++];
        } else if (vb < va) {
            tv += q.probs[b++];
        } else {
            tv += std::abs(p.probs[a++] - q.probs[b++]);
        }
    }
    return 0.5 * tv;
}

}  // namespace simbench::sdc
