#pragma once

#include <stdexcept>
#include <string>

namespace eskel {

// Every failure mode gets its own exception type and a stable process exit
// code, so scripts driving the CLI can tell them apart.
struct Error : std::runtime_error {
  int exit_code;
  Error(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

struct NonConvexError : Error {
  explicit NonConvexError(const std::string& msg) : Error(3, msg) {}
};
struct DegenerateAngleError : Error {
  explicit DegenerateAngleError(const std::string& msg) : Error(4, msg) {}
};
struct DuplicateVertexError : Error {
  explicit DuplicateVertexError(const std::string& msg) : Error(5, msg) {}
};
struct SingularSystemError : Error {
  explicit SingularSystemError(const std::string& msg) : Error(6, msg) {}
};
struct NegativeDensityError : Error {
  explicit NegativeDensityError(const std::string& msg) : Error(7, msg) {}
};
struct ChainingFailureError : Error {
  explicit ChainingFailureError(const std::string& msg) : Error(8, msg) {}
};
struct TooCloseToBoundaryError : Error {
  explicit TooCloseToBoundaryError(const std::string& msg) : Error(9, msg) {}
};
struct TooCloseToJunctionError : Error {
  explicit TooCloseToJunctionError(const std::string& msg) : Error(10, msg) {}
};
struct TooCloseToVertexError : Error {
  explicit TooCloseToVertexError(const std::string& msg) : Error(11, msg) {}
};
struct OutsideDomainError : Error {
  explicit OutsideDomainError(const std::string& msg) : Error(12, msg) {}
};
struct RootNotBracketedError : Error {
  explicit RootNotBracketedError(const std::string& msg) : Error(13, msg) {}
};
struct CircleIntersectsKError : Error {
  explicit CircleIntersectsKError(const std::string& msg) : Error(14, msg) {}
};
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(15, msg) {}
};

}  // namespace eskel
