#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace floerkit {

enum class ErrorKind {
  MalformedTable,
  NonAssociative,
  NoIdentity,
  NoInverse,
  GenusMismatch,
  InvalidAutomorphism,
  MiddleMismatch,
  CategoryMismatch,
  InvalidCategory,
  InvalidObject,
  IllFormedQuotient,
  BoundaryMismatch,
  InvalidChain,
  MoveNotApplicable,
  ResourceLimit,
  EndpointMismatch,
  NotEmbedded,
  InputNotGenerator,
  CyclicMismatch,
  NotAStrip,
  LabelMismatch,
  InvalidEnd,
  InvalidDiagram,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception; `witness` carries machine-readable data about the violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json witness = nullptr);

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& witness() const noexcept { return witness_; }
  nlohmann::json to_json() const;

 private:
  ErrorKind kind_;
  nlohmann::json witness_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message, nlohmann::json witness = nullptr);

}  // namespace floerkit
