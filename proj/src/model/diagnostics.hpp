#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace elminer {

// Counters and warning messages gathered during a run. Thread-safe.
class Diagnostics {
 public:
  Diagnostics() = default;
  Diagnostics(const Diagnostics& other);
  Diagnostics& operator=(const Diagnostics& other);

  void count(const std::string& key, long n = 1);
  void warn(std::string message);

  long counter(const std::string& key) const;
  std::map<std::string, long> counters() const;
  std::vector<std::string> warnings() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, long> counters_;
  std::vector<std::string> warnings_;
};

}  // namespace elminer
