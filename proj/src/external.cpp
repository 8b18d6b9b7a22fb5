#include "retarget/external.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include "retarget/error.hpp"

namespace retarget {

namespace fs = std::filesystem;

fs::path scratch_root() {
  if (const char* env = std::getenv("OAIR_TMPDIR"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return fs::temp_directory_path();
}

TempDir::TempDir() {
  std::string pattern = (scratch_root() / "retarget-XXXXXX").string();
  if (::mkdtemp(pattern.data()) == nullptr) {
    throw Error(ErrorCode::IoError, "cannot create temporary directory from " + pattern);
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char ch : arg) {
    if (ch == '\'') out += "'\\''";
    else out += ch;
  }
  out += "'";
  return out;
}

CommandResult run_command(const std::string& command, const std::vector<std::string>& args) {
  std::string line = command;
  for (const auto& a : args) line += " " + shell_quote(a);

  std::fflush(nullptr);
  FILE* pipe = ::popen(line.c_str(), "r");
  if (pipe == nullptr) {
    throw Error(ErrorCode::ExternalToolFailed, "cannot spawn: " + command);
  }
  CommandResult result;
  std::array<char, 4096> chunk{};
  std::size_t n = 0;
  while ((n = std::fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
    result.standard_output.append(chunk.data(), n);
  }
  const int status = ::pclose(pipe);
  if (status == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace retarget
