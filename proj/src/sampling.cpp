#include "abduct/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace abduct {

void AbductionParams::validate() const {
  auto fail = [](const std::string& what) { throw std::domain_error(what); };
  if (!(mu > 0.0 && mu <= 1.0)) fail("mu must be in (0,1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must be in (0,1)");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must be in (0,1]");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must be in (0,1)");
  if (k < 1) fail("k must be at least 1");
  if (r < 1) fail("r must be at least 1");
  if (n == 0) fail("n must be positive");
  if (static_cast<std::size_t>(k) > n) fail("k must not exceed n");
}

double chernoff_upper_tail(double p, double gamma, std::uint64_t m) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("p must be in (0,1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must be in [0,1]");
  if (m < 1) throw std::domain_error("m must be at least 1");
  return std::exp(-static_cast<double>(m) * p * gamma * gamma / 3.0);
}

double chernoff_lower_tail(double p, double gamma, std::uint64_t m) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("p must be in (0,1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must be in [0,1]");
  if (m < 1) throw std::domain_error("m must be at least 1");
  return std::exp(-static_cast<double>(m) * p * gamma * gamma / 2.0);
}

double solve_log_inequality(double a) {
  if (!(a >= 2.0)) throw std::domain_error("a must be at least 2");
  return 2.0 * a * std::log(a);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("count overflow");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("count overflow");
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) is divisible by i at every step
    unsigned __int128 t = static_cast<unsigned __int128>(result) * (n - k + i);
    t /= i;
    if (t > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial coefficient overflow");
    result = static_cast<std::uint64_t>(t);
  }
  return result;
}

constexpr double kRoundSnap = 1e-9;

}  // namespace

std::uint64_t binomial_sum(std::uint64_t n, int k) {
  std::uint64_t total = 0;
  for (int i = 0; i <= k; ++i)
    total = checked_add(total, binomial(n, static_cast<std::uint64_t>(i)));
  return total;
}

std::uint64_t term_count(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::domain_error("term width must satisfy 1 <= k <= n");
  std::uint64_t total = 0;
  for (int i = 1; i <= k; ++i) {
    if (i >= 64) throw std::overflow_error("term count overflow");
    std::uint64_t layer = checked_mul(binomial(n, static_cast<std::uint64_t>(i)),
                                      std::uint64_t{1} << i);
    total = checked_add(total, layer);
  }
  return total;
}

std::uint64_t sample_bound_algorithm1(double mu, double gamma, double L) {
  double g2 = gamma * gamma;
  double raw = (6.0 / (mu * g2)) * L * std::log((3.0 / g2) * L);
  return static_cast<std::uint64_t>(std::ceil(raw - kRoundSnap));
}

std::uint64_t filter_threshold_for(double mu, double epsilon, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      std::floor(mu * epsilon * static_cast<double>(m) + kRoundSnap));
}

std::uint64_t cover_target_for(double mu, std::uint64_t m) {
  return static_cast<std::uint64_t>(std::ceil(mu * static_cast<double>(m) - kRoundSnap));
}

DerivedParams required_samples(const AbductionParams& params, std::uint64_t budget) {
  params.validate();
  DerivedParams out;
  out.term_count_T = term_count(params.n, params.k);

  // Work with log |T|^r rather than the power itself, which overflows fast.
  double L = std::log(2.0 / params.delta) +
             static_cast<double>(params.r) * std::log(static_cast<double>(out.term_count_T));
  out.m_algorithm1 = sample_bound_algorithm1(params.mu, params.gamma, L);

  std::uint64_t binsum = binomial_sum(2 * static_cast<std::uint64_t>(params.n), params.k);
  out.delta_prime = params.delta / (2.0 * static_cast<double>(binsum) + 4.0);
  double g2 = params.gamma * params.gamma;
  out.m_claim_bound = static_cast<std::uint64_t>(
      std::ceil((12.0 / (params.mu * g2)) * std::log(1.0 / out.delta_prime) - kRoundSnap));

  out.m_theoretical = std::max<std::uint64_t>({out.m_algorithm1, out.m_claim_bound, 1});
  out.budget_capped = budget != 0 && out.m_theoretical > budget;
  out.m = out.budget_capped ? budget : out.m_theoretical;
  out.filter_threshold = filter_threshold_for(params.mu, params.epsilon, out.m);
  out.cover_target = cover_target_for(params.mu, out.m);
  return out;
}

}  // namespace abduct
