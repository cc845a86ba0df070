#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loewner {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  DomainError,
  BranchError,
  UnsupportedNode,
  EmptyDomain,
  SpectrumOutsideDomain,
  SingularBlock,
  RetryExhausted,
  DuplicateNodes,
  NoFiniteLimit,
  OutsideClosure,
  NotPositive,
  NotNegative,
  ZeroFunction,
  Unbounded,
  HypothesisViolated,
  NotRational,
  StageCertificationFailed,
  AtomAtX0,
  NotEndpoint,
  NegativeAtom,
  NonzeroMuMinus,
  QuadratureFailure,
  WindowContainsPole,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace loewner
