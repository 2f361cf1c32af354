#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etkin {

// Base class of every exception thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- geometry ---
struct NotSkewSymmetric : Error { using Error::Error; };
struct NotAugmentedSkew : Error { using Error::Error; };
struct InvalidRotation : Error { using Error::Error; };
struct InvalidPose : Error { using Error::Error; };

// --- model ---
struct JointIndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidLinkRange : Error { using Error::Error; };
struct NotAJoint : Error { using Error::Error; };
struct UnknownModel : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Model-text errors carry the character offset of the offending token.
// Programmatic sequence construction reuses the joint-ordering subclasses
// with the term index in place of a character offset.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};
struct SyntaxError : ParseError { using ParseError::ParseError; };
struct UnknownTransform : ParseError { using ParseError::ParseError; };
struct DuplicateJoint : ParseError { using ParseError::ParseError; };
struct NonMonotonicJoint : ParseError { using ParseError::ParseError; };
struct BadNumber : ParseError { using ParseError::ParseError; };

// --- solvers ---
struct SingularJacobian : Error { using Error::Error; };
struct SingularNormalMatrix : Error { using Error::Error; };
struct FrameMismatch : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

}  // namespace etkin
