#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crn/types.hpp"

namespace crn {

/// Ordered set of distinct letters polymers are built from. Default "AB".
class Alphabet {
 public:
  Alphabet() : letters_("AB") {}
  explicit Alphabet(std::string letters);

  int size() const { return static_cast<int>(letters_.size()); }
  char letter(int i) const { return letters_[static_cast<size_t>(i)]; }
  const std::string& letters() const { return letters_; }

  bool contains(char c) const { return letters_.find(c) != std::string::npos; }
  bool valid_sequence(std::string_view seq) const;

  /// All sequences of length 1..max_length in (length, lexicographic) order.
  std::vector<std::string> sequences_up_to(int max_length) const;

  bool operator==(const Alphabet& other) const = default;

 private:
  std::string letters_;
};

}  // namespace crn
