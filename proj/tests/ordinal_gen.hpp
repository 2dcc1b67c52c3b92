#pragma once

#include "wadgeforge/ordinal.hpp"

#include <algorithm>
#include <random>

namespace wf_test {

using wadgeforge::Base;
using wadgeforge::Ordinal;

/// Random ordinal below eps_{eps_count} of nesting depth <= depth, built
/// only with the public arithmetic (sum of descending-sorted random terms).
inline Ordinal random_ordinal(std::mt19937_64& rng, Base base, int depth = 2, std::uint64_t max_coeff = 3,
                              std::uint32_t eps_count = 4) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<std::uint64_t> coeff(1, max_coeff);
  std::vector<Ordinal> parts;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    int k = kind(rng);
    Ordinal head(base);
    if (k == 0) {
      head = Ordinal::epsilon(static_cast<std::uint32_t>(rng() % eps_count), base);
    } else if (k <= 2 || depth == 0) {
      head = Ordinal::finite(1, base);
    } else {
      head = wadgeforge::base_pow(random_ordinal(rng, base, depth - 1, max_coeff, eps_count));
    }
    parts.push_back(head * coeff(rng));
  }
  std::sort(parts.begin(), parts.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  Ordinal out(base);
  for (const auto& p : parts) out = out + p;
  return out;
}

} // namespace wf_test
