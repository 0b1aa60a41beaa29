#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smcsim {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration. `key` is the dotted path of the offending field
// (e.g. "robot.m1") when one can be named.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class ReachabilityError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class ClockError : public Error {
 public:
  using Error::Error;
};

class IntegrationDiverged : public Error {
 public:
  IntegrationDiverged(double t, std::vector<double> x, const std::string& what)
      : Error(what), t_(t), x_(std::move(x)) {}
  double time() const noexcept { return t_; }
  const std::vector<double>& state() const noexcept { return x_; }

 private:
  double t_;
  std::vector<double> x_;
};

}  // namespace smcsim
