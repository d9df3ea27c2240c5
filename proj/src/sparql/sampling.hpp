#pragma once

#include "miner/miner.hpp"
#include "model/rdf_term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace elminer {

struct SampleSpec {
  SamplingStrategy strategy = SamplingStrategy::Uniform;
  std::size_t size = 1;
  std::uint64_t seed = 0;
};

class MissingCounts : public std::invalid_argument {
 public:
  MissingCounts() : std::invalid_argument("counting sampling strategies need per-subject counts") {}
};

// Uniform: seeded shuffle, first `size`. Counting strategies: weighted sampling without
// replacement, probability proportional to the count; subjects with a zero or missing count
// are never drawn, so the sample can be smaller than `size`. Returns `uris` unchanged when
// |U| <= size.
std::vector<RdfTerm> sample(const std::vector<RdfTerm>& uris, const SampleSpec& spec,
                            const std::optional<std::map<RdfTerm, long>>& counts = std::nullopt);

}  // namespace elminer
