#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "loewner/classify.hpp"
#include "loewner/serialize.hpp"

namespace loewner {

enum class Command { classify, pipeline, measure, report };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

/// Everything one CLI invocation needs. `body` is the parsed spec file.
struct RunSpec {
  Command command = Command::classify;
  Json body = Json::object();
  std::filesystem::path spec_path;
  std::filesystem::path out_dir;
  CertifyConfig cfg;
  std::size_t sample_count = 201;
  double sample_window = 20.0;
  bool replay = false;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitEvaluation = 3;

int exit_code_for(ErrorKind kind);

/// Parses "2..8" or "2,3,5".
std::vector<int> parse_dims(const std::string& text);

int run_classify(const RunSpec& spec);
int run_pipeline(const RunSpec& spec);
int run_measure(const RunSpec& spec);
int run_report(const RunSpec& spec);

/// loewner classify|pipeline|measure|report --spec <file> --out <dir>
///   [--seed N] [--trials N] [--dims 2..8] [--threads N] [--replay]
int run_cli(int argc, char** argv);

}  // namespace loewner
