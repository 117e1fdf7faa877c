#ifndef NORTHCOTT_ERRORS_HPP
#define NORTHCOTT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace northcott {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Text input that does not follow an input grammar.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("at position " + std::to_string(position) + ": " + what),
          position_(position),
          detail_(what) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    std::size_t position_;
    std::string detail_;
};

/// An enumeration box larger than the configured cell budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Evaluation of a rational map at one of its poles.
class PoleError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Requests that fall outside the supported model (e.g. non-abelian groups).
class Unsupported : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant. Never expected to be caught.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace northcott

#endif  // NORTHCOTT_ERRORS_HPP
