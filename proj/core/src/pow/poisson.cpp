#include "poloc/pow/poisson.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

#include "poloc/errors.hpp"
#include "poloc/pow/hashcash.hpp"

namespace poloc::pow {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("lambda must be finite and non-negative");
}

}  // namespace

double poisson_lambda(const crypto::BigInt& target, double hashes, unsigned output_bits) {
  if (hashes < 0) throw InvalidArgument("hash count must be non-negative");
  Real k(target);
  Real n(output_space(output_bits));
  Real lambda = Real(hashes) * k / n;
  return lambda.convert_to<double>();
}

double poisson_pmf(unsigned k, double lambda) {
  check_lambda(lambda);
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double survival(unsigned i, double lambda) {
  check_lambda(lambda);
  // Neumaier summation of the lower tail.
  double sum = 0.0, comp = 0.0;
  for (unsigned k = 0; k < i; ++k) {
    double term = poisson_pmf(k, lambda);
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  double s = 1.0 - (sum + comp);
  return s < 0.0 ? 0.0 : s;
}

double multi_trajectory_success_prob(unsigned i, unsigned j, double lambda) {
  if (i == 0 || j == 0) throw InvalidArgument("trajectory count and length must be >= 1");
  return std::pow(survival(i, lambda), static_cast<double>(j));
}

double hashing_success_prob(const crypto::BigInt& target, std::uint64_t hashes,
                            unsigned output_bits) {
  Real frac = Real(target) / Real(output_space(output_bits));
  Real miss = boost::multiprecision::pow(Real(1) - frac, Real(hashes));
  return (Real(1) - miss).convert_to<double>();
}

unsigned sample_solution_count(double lambda, std::mt19937_64& rng) {
  check_lambda(lambda);
  if (lambda == 0.0) return 0;
  std::poisson_distribution<unsigned> dist(lambda);
  return dist(rng);
}

}  // namespace poloc::pow
