#include "symbreak/permutation.hpp"

#include <numeric>

#include "symbreak/errors.hpp"

namespace symbreak {

Permutation::Permutation(std::vector<int> images, bool certified)
    : images_(std::move(images)), certified_(certified) {
  std::vector<char> hit(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= static_cast<int>(images_.size()) || hit[x])
      throw ArgumentError("image array is not a permutation");
    hit[x] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return Permutation(std::move(id), true);
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::then(const Permutation& after) const {
  if (after.size() != size()) throw ArgumentError("composing permutations of different degree");
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[i] = after.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(out);
  p.certified_ = certified_ && after.certified_;
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(out);
  p.certified_ = certified_;
  return p;
}

std::string Permutation::cycles(std::span<const VertexId> labels) const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      if (j != i) out += ' ';
      out += labels.empty() ? std::to_string(j) : labels[j].str();
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string Permutation::cycles() const { return cycles(std::span<const VertexId>{}); }

int motion_of(const Permutation& p) {
  if (!p.certified()) throw PreconditionError("motion_of needs a certified automorphism");
  int moved = 0;
  for (int i = 0; i < p.size(); ++i) moved += p(i) != i;
  return moved;
}

}  // namespace symbreak
