#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beacon {

enum class ErrorCode {
  DegenerateInput,
  SelfIntersecting,
  TooFewVertices,
  DuplicateVertex,
  NotReflex,
  RayExitsImmediately,
  ChordExitsPolygon,
  PointOutsidePolygon,
  BudgetExceeded,
  DegenerateOnBoundary,
  DegenerateSlopes,
  CertificationFailed,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NotReflex: return "NotReflex";
    case ErrorCode::RayExitsImmediately: return "RayExitsImmediately";
    case ErrorCode::ChordExitsPolygon: return "ChordExitsPolygon";
    case ErrorCode::PointOutsidePolygon: return "PointOutsidePolygon";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegenerateOnBoundary: return "DegenerateOnBoundary";
    case ErrorCode::DegenerateSlopes: return "DegenerateSlopes";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// All domain failures are reported through this one exception type; the code
// lets callers (and the CLI exit-code mapping) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace beacon
