#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Exact double-lottery probability model: hypergeometric machinery for the
// distribution of unique elements and intersection sizes between corpora
// assembled from two independent draws without replacement, plus a
// Monte-Carlo oracle for every analytic distribution.

namespace simbench::sdc {

// Finite pmf over integer support. For the half-integer average-Hausdorff
// similarity the support lattice is doubled (values are 2z); `mode` records
// which convention applies.
struct DiscretePmf {
    std::vector<std::int64_t> support;  // strictly increasing
    std::vector<double> probs;
    std::int64_t n = 0, i = 0, j = -1;  // j < 0: single-sample distribution
    std::string mode;

    double total() const;
    double mean() const;
    // P(value), 0 outside the support.
    double at(std::int64_t value) const;
};

// Exact binomial coefficient for n <= 64 (fits in uint64).
std::uint64_t binom_u64(unsigned n, unsigned k);

// C(M,x)*C(N-M,r-x)/C(N,r); 0 outside the valid range. Exact integer
// binomials (128-bit product) with a single final division for N <= 64,
// log-gamma beyond. Bounds: 0 <= M <= N, 0 <= r <= N.
double hypergeom_pmf(unsigned N, unsigned M, unsigned r, unsigned x);

// Distribution of U_i, the number of unique elements in a double-lottery
// multiset of draw sizes (i, n-i) from an n-element universe.
// P(U = n-x) = hypergeom_pmf(n, n-i, i, x); support within [max(i,n-i), n].
DiscretePmf unique_count_pmf(unsigned n, unsigned i);

// E[U_i] = n - i(n-i)/n.
double expected_unique(unsigned n, unsigned i);

// Intersection size Z_ij of two semantic double-lottery samples: the double
// mixture over (u_i, u_j) of the conditional hypergeometric H(n, u_j, u_i).
DiscretePmf semantic_intersection_pmf(unsigned n, unsigned i, unsigned j);

// Closed form n - (1/n)[i(n-i) + j(n-j) - ij(n-i)(n-j)/n^2].
double expected_intersection_semantic(unsigned n, unsigned i, unsigned j);

// Leading-order distance proportionality (1/n^2)[i(n-i) + j(n-j)].
double sdc_distance_approx(unsigned n, unsigned i, unsigned j);

// Non-semantic case: the two draw halves live in disjoint universes, so the
// intersection is the convolution of H(n,i,j) and H(n,n-i,n-j).
// E[Z] = ij/n + (n-i)(n-j)/n.
DiscretePmf nonsemantic_intersection_pmf(unsigned n, unsigned i, unsigned j);
double expected_intersection_nonsemantic(unsigned n, unsigned i, unsigned j);

// Average Hausdorff distance between two integer multisets under the 0/1
// element metric: 0.5 * [mean_a min_b d(a,b) + mean_b min_a d(a,b)].
double avd_distance(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

// Average-Hausdorff similarity count for two semantic double-lottery
// samples, as the printed fourfold conditional-hypergeometric convolution
// mixed over (u_i, u_j). Support is doubled: values are 2z.
DiscretePmf nondistributional_semantic_pmf(unsigned n, unsigned i, unsigned j);

enum class LotteryMode { semantic, nonsemantic };
enum class IntersectionKind { set_intersection, avd };

// One double-lottery multiset: first draw of size i, second of size n-i,
// each without replacement. Semantic mode draws both from {1..n};
// non-semantic mode uses the disjoint universes {n+1..2n} and {2n+1..3n}.
struct DoubleLotterySample {
    std::vector<std::int64_t> first_draw;
    std::vector<std::int64_t> second_draw;
    std::vector<std::int64_t> multiset() const;
};

DoubleLotterySample double_lottery_sample(unsigned n, unsigned i, LotteryMode mode,
                                          std::uint64_t seed);

// Empirical distribution of the intersection statistic over seeded trials:
// unique-element intersection size, or n*(1 - d_AVD) for the avd kind
// (reported on the doubled lattice, matching nondistributional_semantic_pmf).
DiscretePmf monte_carlo_intersection(unsigned n, unsigned i, unsigned j, LotteryMode mode,
                                     IntersectionKind kind, std::size_t trials,
                                     std::uint64_t seed);

// Total-variation distance 0.5 * sum |p - q| over the union of supports.
double total_variation(const DiscretePmf& p, const DiscretePmf& q);

}  // namespace simbench::sdc
