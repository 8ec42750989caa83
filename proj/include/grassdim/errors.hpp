#pragma once

#include <stdexcept>
#include <string>

namespace grassdim {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero requested") {}
};

class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class TooManyRows : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Overlap-recovery kernel had a different dimension than requested.
class UnexpectedKernelDim : public Error {
 public:
  UnexpectedKernelDim(int expected, int observed)
      : Error("overlap kernel dimension " + std::to_string(observed) +
              ", expected " + std::to_string(expected)),
        expected_(expected),
        observed_(observed) {}
  int expected() const { return expected_; }
  int observed() const { return observed_; }

 private:
  int expected_;
  int observed_;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class DegenerateAfterRetries : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class BelowStability : public Error {
 public:
  using Error::Error;
};

class ParamMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace grassdim
