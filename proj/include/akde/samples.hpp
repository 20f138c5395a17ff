#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace akde {

// Immutable positive sample with cached logs. Construction validates every
// observation: finite and strictly positive.
class SampleSet {
 public:
  explicit SampleSet(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& logs() const noexcept { return logs_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

 private:
  std::vector<double> values_;
  std::vector<double> logs_;
  double min_;
  double max_;
};

struct LogParams {
  double mu;     // mean of log X
  double sigma;  // standard deviation of log X, n-1 divisor; 0 for ties
};

// Log-moment fit used by the plugin rule. Throws InsufficientSamples for n < 2.
LogParams estimate_log_params(const SampleSet& samples);

// Reads observations: one or more per line, separated by commas and/or
// whitespace. A first line that does not parse as numbers is skipped as a
// header. Non-numeric tokens elsewhere raise ParseError with the line number;
// non-positive or non-finite values raise std::domain_error with the line
// number; an input without observations raises InsufficientSamples.
SampleSet read_samples(std::istream& in);
SampleSet read_samples_file(const std::string& path);

}  // namespace akde
