#include "sparql/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace elminer {

std::vector<RdfTerm> sample(const std::vector<RdfTerm>& uris, const SampleSpec& spec,
                            const std::optional<std::map<RdfTerm, long>>& counts) {
  if (spec.size < 1) throw std::invalid_argument("sample size must be >= 1");
  if (spec.strategy != SamplingStrategy::Uniform && !counts) throw MissingCounts();
  if (uris.size() <= spec.size) return uris;

  std::mt19937_64 rng(spec.seed);
  if (spec.strategy == SamplingStrategy::Uniform) {
    std::vector<RdfTerm> out = uris;
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(spec.size);
    return out;
  }

  // Exponential keys: u^(1/w), compared as log(u)/w; largest keys win.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(uris.size());
  for (std::size_t i = 0; i < uris.size(); ++i) {
    double u = unit(rng);
    while (u == 0.0) u = unit(rng);
    auto it = counts->find(uris[i]);
    long c = it == counts->end() ? 0 : it->second;
    double key = c > 0 ? std::log(u) / static_cast<double>(c) : -std::numeric_limits<double>::infinity();
    keys.emplace_back(key, i);
  }
  std::stable_sort(keys.begin(), keys.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<RdfTerm> out;
  for (std::size_t k = 0; k < spec.size && k < keys.size() && std::isfinite(keys[k].first); ++k) {
    out.push_back(uris[keys[k].second]);
  }
  return out;
}

}  // namespace elminer
