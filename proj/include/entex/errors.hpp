#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace entex {

enum class Err {
  MalformedLine,
  SyntaxError,
  UnknownGraph,
  UnknownType,
  UnknownAttribute,
  UnboundVariable,
  UnbalancedCapture,
  DuplicateName,
  UnknownValueKind,
  EmptyClassSet,
  UnknownClass,
  UnknownPath,
  DepthExceeded,
  SchemaViolation,
  TooManyErrors,
  Resource,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::MalformedLine:    return "MalformedLine";
    case Err::SyntaxError:      return "SyntaxError";
    case Err::UnknownGraph:     return "UnknownGraph";
    case Err::UnknownType:      return "UnknownType";
    case Err::UnknownAttribute: return "UnknownAttribute";
    case Err::UnboundVariable:  return "UnboundVariable";
    case Err::UnbalancedCapture:return "UnbalancedCapture";
    case Err::DuplicateName:    return "DuplicateName";
    case Err::UnknownValueKind: return "UnknownValueKind";
    case Err::EmptyClassSet:    return "EmptyClassSet";
    case Err::UnknownClass:     return "UnknownClass";
    case Err::UnknownPath:      return "UnknownPath";
    case Err::DepthExceeded:    return "DepthExceeded";
    case Err::SchemaViolation:  return "SchemaViolation";
    case Err::TooManyErrors:    return "TooManyErrors";
    case Err::Resource:         return "Resource";
  }
  return "?";
}

/// Error for resource loading and engine misuse. `file`/`line` locate the
/// offending resource line when known (line 0 = not applicable).
class EngineError : public std::runtime_error {
 public:
  EngineError(Err kind, std::string message, std::string file = {}, std::size_t line = 0)
      : std::runtime_error(format(kind, message, file, line)),
        kind_(kind), message_(std::move(message)), file_(std::move(file)), line_(line) {}

  Err kind() const { return kind_; }
  const std::string& message() const { return message_; }
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(Err kind, const std::string& message,
                            const std::string& file, std::size_t line) {
    std::string s;
    if (!file.empty()) {
      s += file;
      if (line) s += ":" + std::to_string(line);
      s += ": ";
    }
    s += err_name(kind);
    s += ": ";
    s += message;
    return s;
  }

  Err kind_;
  std::string message_;
  std::string file_;
  std::size_t line_;
};

struct Diagnostic {
  Err kind = Err::Resource;
  std::string file;
  std::size_t line = 0;
  std::string message;

  std::string to_string() const {
    return EngineError(kind, message, file, line).what();
  }
};

/// Collects per-line resource errors up to a cap; exceeding the cap aborts
/// the load with TooManyErrors.
class Diagnostics {
 public:
  explicit Diagnostics(std::size_t cap = 100) : cap_(cap) {}

  void add(Err kind, std::string message, std::string file = {}, std::size_t line = 0) {
    items_.push_back({kind, std::move(file), line, std::move(message)});
    if (items_.size() > cap_)
      throw EngineError(Err::TooManyErrors,
                        "aborting after " + std::to_string(cap_) + " errors");
  }

  void add(const EngineError& e) { add(e.kind(), e.message(), e.file(), e.line()); }

  bool empty() const { return items_.empty(); }
  const std::vector<Diagnostic>& items() const { return items_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
  std::vector<Diagnostic> items_;
};

}  // namespace entex
