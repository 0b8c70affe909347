#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symbreak/vertex_id.hpp"

namespace symbreak {

/// A locally finite graph given by its neighbor oracle. Implementations must
/// be pure: the same vertex always yields the same duplicate-free sequence,
/// never containing the vertex itself, and adjacency must be symmetric.
class GraphFamily {
 public:
  virtual ~GraphFamily() = default;

  /// Throws IdentifierError for encodings foreign to the family.
  virtual std::vector<VertexId> neighbors(const VertexId& v) const = 0;
  virtual void validate(const VertexId& v) const = 0;

  virtual std::string name() const = 0;
  /// Canonical key=value description, parseable by parse_family_spec.
  virtual std::string spec_string() const = 0;
  virtual std::optional<VertexId> default_root() const { return std::nullopt; }

  /// Closed-form graph distance when the family has one. Used as a fast path
  /// for far-away queries; BFS remains the reference route.
  virtual std::optional<std::int64_t> metric(const VertexId&, const VertexId&) const {
    return std::nullopt;
  }
  virtual bool has_metric() const { return false; }
};

/// Immutable, cheaply copyable handle; safe to share across threads.
class GraphHandle {
 public:
  GraphHandle() = default;
  explicit GraphHandle(std::shared_ptr<const GraphFamily> impl) : impl_(std::move(impl)) {}

  std::vector<VertexId> neighbors(const VertexId& v) const { return impl_->neighbors(v); }
  void validate(const VertexId& v) const { impl_->validate(v); }
  std::string family_name() const { return impl_->name(); }
  std::string spec_string() const { return impl_->spec_string(); }
  std::optional<VertexId> root() const { return impl_->default_root(); }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const {
    return impl_->metric(u, w);
  }
  bool has_metric() const { return impl_->has_metric(); }

  const GraphFamily& family() const { return *impl_; }
  explicit operator bool() const noexcept { return static_cast<bool>(impl_); }

 private:
  std::shared_ptr<const GraphFamily> impl_;
};

}  // namespace symbreak
