#pragma once

#include <cstdint>
#include <random>

#include "poloc/crypto/field.hpp"

namespace poloc::pow {

// Expected number of puzzle solutions: lambda = n K / N, with N = 2^output_bits.
// Evaluated in 100-digit binary floating point, so exact for any K < 2^256.
double poisson_lambda(const crypto::BigInt& target, double hashes, unsigned output_bits);

double poisson_pmf(unsigned k, double lambda);

// Pr(X >= i) = 1 - sum_{k<i} pmf(k), with compensated summation.
double survival(unsigned i, double lambda);

// Probability of sustaining i concurrent trajectories over j PoW-gated hops:
// survival(i, lambda)^j. i = 1 is the honest (single trajectory) case.
double multi_trajectory_success_prob(unsigned i, unsigned j, double lambda);

// Exact Bernoulli-draw success probability 1 - (1 - K/N)^n, for checking the
// Poisson approximation against the hashing backend.
double hashing_success_prob(const crypto::BigInt& target, std::uint64_t hashes,
                            unsigned output_bits);

unsigned sample_solution_count(double lambda, std::mt19937_64& rng);

}  // namespace poloc::pow
