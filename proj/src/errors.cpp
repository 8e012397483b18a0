#include "gabriel/errors.hpp"

namespace gabriel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HandleMismatch: return "HandleMismatch";
    case ErrorKind::EmptyGenerators: return "EmptyGenerators";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MalformedTower: return "MalformedTower";
    case ErrorKind::InfiniteDual: return "InfiniteDual";
    case ErrorKind::MalformedChain: return "MalformedChain";
    case ErrorKind::NotDirected: return "NotDirected";
    case ErrorKind::ChainRequired: return "ChainRequired";
    case ErrorKind::BadCertificate: return "BadCertificate";
    case ErrorKind::DepthMismatch: return "DepthMismatch";
    case ErrorKind::NotInIdeal: return "NotInIdeal";
    case ErrorKind::NotZeroConvergent: return "NotZeroConvergent";
    case ErrorKind::FiniteOnly: return "FiniteOnly";
    case ErrorKind::TorsionObstruction: return "TorsionObstruction";
    case ErrorKind::FaithfulOnly: return "FaithfulOnly";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::TwoSidedRequired: return "TwoSidedRequired";
    case ErrorKind::VarianceMismatch: return "VarianceMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gabriel
