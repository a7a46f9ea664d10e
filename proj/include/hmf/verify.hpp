#ifndef HMF_VERIFY_HPP
#define HMF_VERIFY_HPP

#include <random>
#include <string>
#include <vector>

#include "hmf/config.hpp"
#include "hmf/ring.hpp"

namespace hmf::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// parallelism cap from HMF_THETA_THREADS (>= 1)
int thread_cap();

// random expansion over the model: exponents drawn from the totally
// positive window points with trace <= trace_cap, small random weights
qexp::QExpansion random_qexp(const config::LoadedModel& lm,
                             std::mt19937_64& rng, const intmat::Rat& bound,
                             int max_terms, const intmat::Rat& trace_cap);

// identity in {derivation, theta-commute, theta-v-zero, ppower,
// theta-p, kernel-image, unit-invariance, exactness}
std::vector<CheckResult> run_suite(const config::LoadedModel& lm,
                                   const std::string& identity, int n,
                                   uint64_t seed);

bool all_pass(const std::vector<CheckResult>& rs);

}  // namespace hmf::verify

#endif
