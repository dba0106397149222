#pragma once

#include <cstdint>
#include <stdexcept>

namespace abduct {

/// Input parameters of an abduction run. Derived quantities are always
/// recomputed from these, never stored.
struct AbductionParams {
  double mu = 0.5;       // plausibility floor, (0,1]
  double epsilon = 0.1;  // entailment tolerance, (0,1)
  double gamma = 0.5;    // multiplicative slack, (0,1]
  double delta = 0.1;    // failure probability, (0,1)
  int k = 1;             // term width bound, >= 1
  int r = 1;             // assumed optimal term count, >= 1
  std::size_t n = 0;     // attribute count

  void validate() const;  // throws std::domain_error
};

struct DerivedParams {
  std::uint64_t term_count_T = 0;
  std::uint64_t m_algorithm1 = 0;   // ceil((6/mu g^2) L log((3/g^2) L)), L = log(2|T|^r/delta)
  std::uint64_t m_claim_bound = 0;  // ceil((12/mu g^2) log(1/delta'))
  std::uint64_t m_theoretical = 0;  // max of the two
  std::uint64_t m = 0;              // after the budget cap
  bool budget_capped = false;
  double delta_prime = 0.0;  // delta / (2 C(2n, <=k) + 4)
  std::uint64_t filter_threshold = 0;  // floor(mu epsilon m)
  std::uint64_t cover_target = 0;      // ceil(mu m)
};

/// P[mean of m [0,1]-valued variables > (1+gamma) p] <= exp(-m p gamma^2 / 3).
double chernoff_upper_tail(double p, double gamma, std::uint64_t m);
/// Lower tail, exponent /2.
double chernoff_lower_tail(double p, double gamma, std::uint64_t m);

/// Returns x = 2 a ln a, the witness for x >= a ln x. Requires a >= 2: at
/// a = 1 the prescription collapses to x = 0, so the inequality is only
/// exercised from 2 up.
double solve_log_inequality(double a);

/// Number of non-contradictory terms of 1..k literals over n attributes:
/// sum_{i=1..k} C(n,i) 2^i. Throws std::overflow_error when it does not fit.
std::uint64_t term_count(std::size_t n, int k);

/// C(n,0) + ... + C(n,k), exact.
std::uint64_t binomial_sum(std::uint64_t n, int k);

/// The first sample bound given L = log(2 |T|^r / delta).
std::uint64_t sample_bound_algorithm1(double mu, double gamma, double L);

// Count helpers shared by the pipeline; snap away float dust before rounding.
std::uint64_t filter_threshold_for(double mu, double epsilon, std::uint64_t m);
std::uint64_t cover_target_for(double mu, std::uint64_t m);

/// Required sample count: the maximum of the two published bounds, optionally
/// capped (budget 0 = uncapped). filter_threshold and cover_target are
/// computed from the capped m.
DerivedParams required_samples(const AbductionParams& params, std::uint64_t budget = 0);

}  // namespace abduct
