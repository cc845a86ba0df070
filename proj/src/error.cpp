#include "loewner/error.hpp"

namespace loewner {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BranchError: return "BranchError";
    case ErrorKind::UnsupportedNode: return "UnsupportedNode";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::SpectrumOutsideDomain: return "SpectrumOutsideDomain";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::RetryExhausted: return "RetryExhausted";
    case ErrorKind::DuplicateNodes: return "DuplicateNodes";
    case ErrorKind::NoFiniteLimit: return "NoFiniteLimit";
    case ErrorKind::OutsideClosure: return "OutsideClosure";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNegative: return "NotNegative";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::StageCertificationFailed: return "StageCertificationFailed";
    case ErrorKind::AtomAtX0: return "AtomAtX0";
    case ErrorKind::NotEndpoint: return "NotEndpoint";
    case ErrorKind::NegativeAtom: return "NegativeAtom";
    case ErrorKind::NonzeroMuMinus: return "NonzeroMuMinus";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::WindowContainsPole: return "WindowContainsPole";
  }
  return "Unknown";
}

}  // namespace loewner
