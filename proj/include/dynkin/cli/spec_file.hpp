#pragma once

// JSON game-spec files. Numbers are held as text until the arithmetic is
// chosen, so "60/11" or "0.2" can be read exactly in rational mode.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dynkin/errors.hpp"
#include "dynkin/resolvent.hpp"

namespace dynkin::cli {

class ParseError : public Error {
 public:
  ParseError(std::string field, std::string message, std::size_t line = 0);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct SpecFile {
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> generator;
  std::string beta;
  std::vector<std::string> psi;
  std::vector<std::string> phi;
  std::string init = "strict";
  std::string arithmetic = "float";
};

SpecFile parse_spec_text(const std::string& text);
SpecFile load_spec_file(const std::filesystem::path& path);
std::string dump_spec(const SpecFile& spec);

// Parses every number in the chosen field and validates the result.
// Throws ParseError for unreadable numbers and ValidationError otherwise.
template <Scalar T>
GameSpec<T> to_game_spec(const SpecFile& file, std::optional<T> tol = std::nullopt);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dynkin::cli
