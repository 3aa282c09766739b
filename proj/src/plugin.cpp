#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "bugfix/mapper.hpp"
#include "bugfix/tree_format.hpp"

namespace bugfix {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// Temporary file removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    std::string templ = (std::filesystem::temp_directory_path() / "bugfix-src-XXXXXX").string();
    int fd = ::mkstemp(templ.data());
    if (fd < 0) throw std::runtime_error("cannot create temporary file");
    ::close(fd);
    path_ = templ;
    std::ofstream(path_, std::ios::binary) << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

UNode run_parser_plugin(const std::string& command, const std::string& language, const std::string& source) {
  TempFile input(source);
  const std::string line = command + " " + shell_quote(language) + " < " + shell_quote(input.path());
  FILE* pipe = ::popen(line.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start parser plugin: " + command);
  std::string output;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) output.append(buf, n);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw std::runtime_error("parser plugin failed: " + command);
  return parse_tree(output);
}

}  // namespace bugfix
