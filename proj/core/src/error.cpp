#include "floerkit/error.hpp"

namespace floerkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::GenusMismatch: return "GenusMismatch";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::MiddleMismatch: return "MiddleMismatch";
    case ErrorKind::CategoryMismatch: return "CategoryMismatch";
    case ErrorKind::InvalidCategory: return "InvalidCategory";
    case ErrorKind::InvalidObject: return "InvalidObject";
    case ErrorKind::IllFormedQuotient: return "IllFormedQuotient";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::MoveNotApplicable: return "MoveNotApplicable";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotEmbedded: return "NotEmbedded";
    case ErrorKind::InputNotGenerator: return "InputNotGenerator";
    case ErrorKind::CyclicMismatch: return "CyclicMismatch";
    case ErrorKind::NotAStrip: return "NotAStrip";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::InvalidEnd: return "InvalidEnd";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, nlohmann::json witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

nlohmann::json Error::to_json() const {
  nlohmann::json j = {{"error", std::string(to_string(kind_))}, {"message", what()}};
  if (!witness_.is_null()) j["witness"] = witness_;
  return j;
}

void raise(ErrorKind kind, const std::string& message, nlohmann::json witness) {
  throw Error(kind, message, std::move(witness));
}

}  // namespace floerkit
