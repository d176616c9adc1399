#pragma once
// Randomized exact verification: nilpotent and abelian frames with random
// rational torsion, pushed through exact orthonormal basis changes (signed
// permutations and rational-Pythagorean Givens rotations).  Every universal
// identity must vanish identically; the pair-symmetry equivalences must agree.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewtor/geometry.hpp"

namespace skewtor {

struct FuzzOptions {
  std::uint64_t seed = 0;
  int count = 100;
  std::vector<int> dims = {3, 5, 6};
  bool mutate_gen_sigma_flip = false;  // fault injection: flip the sigma sign in GEN
};

struct FuzzResult {
  int instances = 0;
  bool ok = true;
  std::string failed_identity;  // first identity with a nonzero exact residual
  int failed_index = -1;
  nlohmann::ordered_json counterexample;  // geometry + residual of the failure
  int pair_true = 0, pair_false = 0;      // agreement tallies for the triple
};

FuzzResult run_fuzz(const FuzzOptions& opt);

}  // namespace skewtor
