#pragma once

#include <stdexcept>
#include <string>

namespace platfloer {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidBraid : public Error {
public:
  using Error::Error;
};

class MoveError : public Error {
public:
  using Error::Error;
};

class NotAKnot : public Error {
public:
  using Error::Error;
};

class DegenerateInput : public Error {
public:
  using Error::Error;
};

class ConventionViolation : public Error {
public:
  using Error::Error;
};

class NotNice : public Error {
public:
  NotNice(const std::string& what, std::string census)
      : Error(what), census_(std::move(census)) {}
  const std::string& census() const { return census_; }

private:
  std::string census_;
};

class InternalInconsistency : public Error {
public:
  using Error::Error;
};

class GradingIndeterminate : public Error {
public:
  using Error::Error;
};

class FiltrationViolation : public Error {
public:
  using Error::Error;
};

class NotADifferential : public Error {
public:
  using Error::Error;
};

}  // namespace platfloer
