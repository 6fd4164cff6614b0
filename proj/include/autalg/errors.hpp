#pragma once

#include <stdexcept>
#include <string>

namespace autalg {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct SpecMismatch : Error {
  explicit SpecMismatch(const std::string& what) : Error(what) {}
};

struct ColsMismatch : Error {
  explicit ColsMismatch(const std::string& what) : Error(what) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& what) : Error(what) {}
};

struct AlphabetMismatch : Error {
  explicit AlphabetMismatch(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct UnknownSymbol : Error {
  explicit UnknownSymbol(const std::string& what) : Error(what) {}
};

struct VariableOutOfRange : Error {
  explicit VariableOutOfRange(const std::string& what) : Error(what) {}
};

struct NotABaseMap : Error {
  explicit NotABaseMap(const std::string& what) : Error(what) {}
};

struct NotBoolean : Error {
  explicit NotBoolean(const std::string& what) : Error(what) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

struct NotAscending : Error {
  explicit NotAscending(const std::string& what) : Error(what) {}
};

struct SamplerMissing : Error {
  explicit SamplerMissing(const std::string& what) : Error(what) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct ResultTooLarge : Error {
  explicit ResultTooLarge(const std::string& what) : Error(what) {}
};

struct NonIdempotentStar : Error {
  explicit NonIdempotentStar(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line(line) {}
  explicit ParseError(const std::string& message) : Error(message), line(0) {}
  size_t line;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace autalg
