#ifndef CHUNKGA_ERRORS_H_
#define CHUNKGA_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chunkga {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An error tied to a line of some text input. line() is 1-based.
class LineError : public Error {
 public:
  LineError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MalformedLine : public LineError {
 public:
  using LineError::LineError;
};

// I-X without a preceding B-X or I-X.
class IllegalBio : public LineError {
 public:
  using LineError::LineError;
};

class MalformedArpa : public LineError {
 public:
  using LineError::LineError;
};

class MalformedInventory : public LineError {
 public:
  using LineError::LineError;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("empty corpus") {}
};

class EmptyInventory : public Error {
 public:
  EmptyInventory() : Error("template inventory is empty") {}
};

// Bad or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Artifacts on disk were trained under a different configuration.
class ManifestMismatch : public Error {
 public:
  using Error::Error;
};

// Missing, unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chunkga

#endif  // CHUNKGA_ERRORS_H_
