#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symbreak {

// Base of every error thrown by the library. The CLI maps the concrete type
// to an exit code, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed vertex encoding for a family.
class IdentifierError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget, const std::string& what)
      : Error("vertex budget of " + std::to_string(budget) + " exceeded: " + what),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

// Automorphism search hit its node or group-size cap.
class SearchCapExceeded : public Error {
 public:
  SearchCapExceeded(const std::string& what, std::size_t partial)
      : Error(what), partial_(partial) {}
  std::size_t partial_count() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

class GroupTooLarge : public SearchCapExceeded {
 public:
  using SearchCapExceeded::SearchCapExceeded;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class AnchorNotFound : public Error {
 public:
  using Error::Error;
};

class WitnessExhausted : public Error {
 public:
  WitnessExhausted(const std::string& what, std::size_t pair_index)
      : Error(what), pair_index_(pair_index) {}
  std::size_t pair_index() const noexcept { return pair_index_; }

 private:
  std::size_t pair_index_;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

class ScheduleInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace symbreak
