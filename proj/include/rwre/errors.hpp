#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rwre {

// Precondition violations throw std::invalid_argument. The two failure modes
// below are expected outcomes of a search with a finite budget.

class SiteBudgetExceeded : public std::runtime_error {
 public:
  SiteBudgetExceeded(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what), budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

class AttemptsExhausted : public std::runtime_error {
 public:
  AttemptsExhausted(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

}  // namespace rwre
