#include "model/diagnostics.hpp"

namespace elminer {

Diagnostics::Diagnostics(const Diagnostics& other) {
  std::lock_guard lock(other.mu_);
  counters_ = other.counters_;
  warnings_ = other.warnings_;
}

Diagnostics& Diagnostics::operator=(const Diagnostics& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  counters_ = other.counters_;
  warnings_ = other.warnings_;
  return *this;
}

namespace {
constexpr std::size_t kMaxWarnings = 200;
}

void Diagnostics::count(const std::string& key, long n) {
  std::lock_guard lock(mu_);
  counters_[key] += n;
}

void Diagnostics::warn(std::string message) {
  std::lock_guard lock(mu_);
  if (warnings_.size() < kMaxWarnings) warnings_.push_back(std::move(message));
  ++counters_["warnings"];
}

long Diagnostics::counter(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = counters_.find(key);
  return it == counters_.end() ? 0 : it->second;
}

std::map<std::string, long> Diagnostics::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

std::vector<std::string> Diagnostics::warnings() const {
  std::lock_guard lock(mu_);
  return warnings_;
}

}  // namespace elminer
