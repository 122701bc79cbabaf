#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsconn/json_io.hpp"

namespace rsconn::cli {

enum class Command { Exponents, Normalize, Euler, Hom, Algebraize, Roundtrip, Saturate, Selftest };
enum class Format { Json, Text };

Command parse_command(std::string_view name);
std::string_view command_name(Command c);

struct JobSpec {
  Command command = Command::Exponents;
  std::vector<std::filesystem::path> inputs;
  int precision = 12;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  /// roundtrip: inputs are earlier reports whose certificates are re-checked.
  bool verify = false;
  /// saturate: maximal number of lattice rounds.
  int bound = 8;
  /// selftest: number of generated instances.
  int count = 20;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

struct FileReport {
  io::Json report;
  int exit_code = 0;
};

/// 0 on success, 1 for I/O, parse and validation errors, 2 for domain errors.
int exit_code_for(ErrorKind kind);

/// Runs one command on already-loaded text; `label` names the input in the report.
FileReport run_text(const JobSpec& job, std::string_view text, const std::string& label);
FileReport run_file(const JobSpec& job, const std::filesystem::path& path);

struct Outcome {
  int exit_code = 0;
  std::string output;
};

/// All inputs (in parallel), reports in input order. The exit code is the first
/// nonzero per-file code in input order.
Outcome run(const JobSpec& job);

/// Argument parsing and dispatch for the rsconn executable.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rsconn::cli
