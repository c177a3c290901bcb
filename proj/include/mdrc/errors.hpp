#ifndef MDRC_ERRORS_HPP_
#define MDRC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mdrc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFinite : public Error {
 public:
  explicit NonFinite(const std::string& what) : Error(what) {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class InvalidPlant : public Error {
 public:
  explicit InvalidPlant(const std::string& what) : Error(what) {}
};

class Uncontrollable : public Error {
 public:
  explicit Uncontrollable(const std::string& what) : Error(what) {}
};

class Unobservable : public Error {
 public:
  explicit Unobservable(const std::string& what) : Error(what) {}
};

class UnstableRequest : public Error {
 public:
  explicit UnstableRequest(const std::string& what) : Error(what) {}
};

class UnsupportedShape : public Error {
 public:
  explicit UnsupportedShape(const std::string& what) : Error(what) {}
};

class ZeroDcGain : public Error {
 public:
  explicit ZeroDcGain(const std::string& what) : Error(what) {}
};

class MissingGain : public Error {
 public:
  explicit MissingGain(const std::string& what) : Error(what) {}
};

class ObserverUnstable : public Error {
 public:
  explicit ObserverUnstable(const std::string& what) : Error(what) {}
};

class EmptyTrace : public Error {
 public:
  explicit EmptyTrace(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace mdrc

#endif  // MDRC_ERRORS_HPP_
