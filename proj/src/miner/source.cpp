#include "miner/source.hpp"

#include <algorithm>

namespace elminer {

std::vector<Triple> LocalGraphSource::fetch(const std::vector<RdfTerm>& subjects, const CancellationToken* token) {
  std::vector<Triple> out;
  for (std::size_t start = 0; start < subjects.size(); start += batch_size_) {
    if (token && token->cancelled()) throw Cancelled();
    ++queries_;
    std::vector<RdfTerm> batch(subjects.begin() + static_cast<long>(start),
                               subjects.begin() + static_cast<long>(std::min(subjects.size(), start + batch_size_)));
    auto part = graph_.triples_with_subjects(batch);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace elminer
