#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace delkit::cli {

enum ExitCode : int { kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
  enum class Command { Mc, Sat, Valid, Translate, GenQbf, GenTiling, OracleQbf, OracleTiling };
  enum class Engine { Pspace, Naive };

  Command command = Command::Mc;
  std::optional<std::filesystem::path> model_path;
  std::vector<std::filesystem::path> event_paths;
  std::optional<std::string> formula;
  std::optional<std::filesystem::path> formula_path;
  // World to check at; defaults to the model file's point.
  std::optional<std::string> point;
  Engine engine = Engine::Pspace;

  std::uint64_t steps = 1'000'000;
  double seconds = 60.0;
  std::size_t depth_limit = 100'000;

  bool json = false;
  bool stats = false;
  bool simplify = false;
  bool debug = false;
  std::optional<std::filesystem::path> trace_path;
  std::optional<std::filesystem::path> dump_path;
  // sat/valid: model file; gen: bundle directory.
  std::optional<std::filesystem::path> output;

  // gen/oracle: QBF text (or a file holding it), or a tiling JSON file.
  std::string instance;
  std::optional<std::size_t> n;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses the command line and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace delkit::cli
