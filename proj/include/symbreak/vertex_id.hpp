#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace symbreak {

/// Canonical vertex token. Identity and order are those of the textual
/// encoding; each generator family owns the meaning of the encoding.
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::string encoding) : enc_(std::move(encoding)) {}

  const std::string& str() const noexcept { return enc_; }
  bool empty() const noexcept { return enc_.empty(); }

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
    return a.enc_.compare(b.enc_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const VertexId& v) {
    return os << v.enc_;
  }

 private:
  std::string enc_;
};

}  // namespace symbreak

template <>
struct std::hash<symbreak::VertexId> {
  std::size_t operator()(const symbreak::VertexId& v) const noexcept {
    return std::hash<std::string>{}(v.str());
  }
};
