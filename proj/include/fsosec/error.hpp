#pragma once

#include <stdexcept>
#include <string>

namespace fsosec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// A straight Mellin-Barnes contour cannot separate the two pole families.
class PoleCollision : public Error
{
  public:
    using Error::Error;
};

/// Error estimate still above tolerance after the refinement budget was spent.
class NonConvergent : public Error
{
  public:
    using Error::Error;
};

/// Invalid run configuration; the message starts with the offending field path.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

}  // namespace fsosec
