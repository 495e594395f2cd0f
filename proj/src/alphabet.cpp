#include "crn/alphabet.hpp"

#include <algorithm>

namespace crn {

Alphabet::Alphabet(std::string letters) : letters_(std::move(letters)) {
  if (letters_.size() < 2) {
    throw ConfigError("alphabet needs at least 2 letters, got \"" + letters_ + "\"");
  }
  std::string sorted = letters_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("alphabet letters must be distinct: \"" + letters_ + "\"");
  }
}

bool Alphabet::valid_sequence(std::string_view seq) const {
  if (seq.empty()) return false;
  for (char c : seq) {
    if (!contains(c)) return false;
  }
  return true;
}

std::vector<std::string> Alphabet::sequences_up_to(int max_length) const {
  std::vector<std::string> out;
  std::vector<std::string> frontier = {""};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    next.reserve(frontier.size() * letters_.size());
    for (const auto& prefix : frontier) {
      for (char c : letters_) {
        next.push_back(prefix + c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace crn
