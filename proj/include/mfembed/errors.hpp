#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfembed {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph() : Error("graph is disconnected") {}
  using Error::Error;
};

class NoEdges : public Error {
 public:
  NoEdges() : Error("graph has no edges") {}
};

class SingleVertex : public Error {
 public:
  SingleVertex() : Error("operation requires at least two vertices") {}
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class BadSize : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class EdgeNotInGraph : public Error {
 public:
  EdgeNotInGraph(int u, int v)
      : Error("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the graph") {}
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class BadEpsilon : public Error {
 public:
  explicit BadEpsilon(double eps) : Error("epsilon must lie in (0,1), got " + std::to_string(eps)) {}
};

class CyclicParentArray : public Error {
 public:
  CyclicParentArray() : Error("parent array contains a cycle") {}
};

class PairOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyPacking : public Error {
 public:
  EmptyPacking() : Error("no balanced cut other than {V} exists") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mfembed
