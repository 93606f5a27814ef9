#pragma once

#include <span>
#include <vector>

// Shared scalar statistics kernels: means, standardization, correlation,
// simple OLS and the one-way ANOVA effect size.

namespace simbench::stats {

double mean(std::span<const double> xs);

// Sample variance, denominator N-1. Requires at least 2 values.
double sample_variance(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

// (v - mean) / sample_sd, elementwise. All zeros when the input is constant.
// Throws std::invalid_argument for fewer than 2 values.
std::vector<double> standardize(std::span<const double> values);

double pearson(std::span<const double> xs, std::span<const double> ys);

// Average ranks (1-based); tied values receive the mean of their rank run.
std::vector<double> average_ranks(std::span<const double> xs);

// Spearman rank correlation: Pearson on average ranks. Requires equal
// lengths >= 3 and non-constant inputs on both sides.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of y on x. Throws if x is constant or sizes
// mismatch; r_squared is 0 when y is constant (zero total variance).
OlsFit ols_fit(std::span<const double> xs, std::span<const double> ys);

// One-way fixed-effects ANOVA omega-squared effect size:
//   (SS_treat - df_treat * MS_res) / (SS_tot + MS_res).
// Requires >= 2 non-empty groups and residual degrees of freedom >= 1 unless
// the residual sum of squares is exactly zero (then MS_res = 0).
double omega_squared(const std::vector<std::vector<double>>& groups);

}  // namespace simbench::stats
