#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace termseq {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public error {
 public:
  using error::error;
};

class config_error : public error {
 public:
  using error::error;
};

// Malformed lexicon or pattern input. `line` is 1-based, 0 when the problem
// is not tied to a single line (e.g. a synonym cycle).
class load_error : public error {
 public:
  load_error(const std::filesystem::path& file, std::size_t line, const std::string& what)
      : error(format(file, line, what)), file_(file), line_(line) {}

  const std::filesystem::path& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::filesystem::path& file, std::size_t line,
                            const std::string& what) {
    std::string msg = file.string();
    if (line > 0) msg += ":" + std::to_string(line);
    return msg + ": " + what;
  }

  std::filesystem::path file_;
  std::size_t line_;
};

}  // namespace termseq
