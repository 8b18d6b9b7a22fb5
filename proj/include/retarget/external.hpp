#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace retarget {

/// Uniquely named scratch directory, removed with its contents on
/// destruction. Created under $OAIR_TMPDIR when set, else the system
/// temporary directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path scratch_root();

/// Single-quotes `arg` for /bin/sh.
std::string shell_quote(const std::string& arg);

struct CommandResult {
  int exit_code = 0;
  std::string standard_output;
};

/// Runs `command` (a shell fragment) with the quoted arguments appended and
/// captures its standard output. A terminated-by-signal child reports 128+n.
CommandResult run_command(const std::string& command, const std::vector<std::string>& args);

}  // namespace retarget
