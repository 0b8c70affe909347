#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "symbreak/vertex_id.hpp"

namespace symbreak {

/// Bijection on 0..n-1 stored as its image array. `certified` means an
/// engine checked it against a graph's adjacency and non-adjacency.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ArgumentError when `images` is not a bijection.
  explicit Permutation(std::vector<int> images, bool certified = false);
  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const noexcept { return images_; }
  bool certified() const noexcept { return certified_; }
  bool is_identity() const;
  bool fixes(int i) const { return images_[i] == i; }

  /// x -> after(this(x)).
  Permutation then(const Permutation& after) const;
  Permutation inverse() const;

  /// Cycle notation over the given labels, e.g. "(a b)(c d e)"; "()" for
  /// the identity. Fixed points are omitted.
  std::string cycles(std::span<const VertexId> labels) const;
  std::string cycles() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
  bool certified_ = false;
};

/// Number of moved points. Throws PreconditionError for uncertified input.
int motion_of(const Permutation& p);

}  // namespace symbreak
