#ifndef NILGO_ERROR_HPP_
#define NILGO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nilgo {

/// Malformed or out-of-contract input data (bad shapes, non-finite entries,
/// values outside an operation's admissible range).
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on an object that does not satisfy its
/// structural precondition (e.g. a checker that needs [n,n] = z).
class PreconditionError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// The object lies outside the supported envelope (e.g. nilpotency class > 2).
class UnsupportedError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class NotTwoStepError : public PreconditionError
{
public:
  using PreconditionError::PreconditionError;
};

class InterpolationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilgo

#endif  // NILGO_ERROR_HPP_
