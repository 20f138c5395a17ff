#include "akde/samples.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>
#include <utility>

#include "akde/errors.hpp"

namespace akde {

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InsufficientSamples("sample set is empty");
  }
  logs_.reserve(values_.size());
  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  for (double v : values_) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::domain_error("observations must be finite and positive");
    }
    logs_.push_back(std::log(v));
    if (v < min_) min_ = v;
    if (v > max_) max_ = v;
  }
}

LogParams estimate_log_params(const SampleSet& samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw InsufficientSamples("need at least two samples");
  }
  double mean = 0.0;
  for (double l : samples.logs()) {
    mean += l;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double l : samples.logs()) {
    const double d = l - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

namespace {

bool parse_number(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') {
    ++begin;  // from_chars does not accept a leading plus
  }
  if (begin == end) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) {
    tokens.push_back(current);
  }
  return tokens;
}

}  // namespace

SampleSet read_samples(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      continue;
    }
    if (!seen_data) {
      // A leading line of non-numeric tokens is a header.
      double probe;
      bool numeric = true;
      for (const auto& t : tokens) {
        if (!parse_number(t, probe)) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        seen_data = true;  // only the first candidate line may be a header
        continue;
      }
    }
    seen_data = true;
    for (const auto& t : tokens) {
      double v;
      if (!parse_number(t, v)) {
        throw ParseError(line_number, "'" + t + "' is not a number");
      }
      if (!std::isfinite(v) || v <= 0.0) {
        throw std::domain_error("line " + std::to_string(line_number) +
                                ": observation must be positive, got " + t);
      }
      values.push_back(v);
    }
  }
  if (values.empty()) {
    throw InsufficientSamples("input contains no observations");
  }
  return SampleSet(std::move(values));
}

SampleSet read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open input file: " + path);
  }
  return read_samples(in);
}

}  // namespace akde
