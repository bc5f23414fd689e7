//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_SUBPROCESS_HPP
#define MOLBENCH_SUBPROCESS_HPP

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "molbench/error.hpp"

namespace molbench {

struct RunResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output; // combined stdout + stderr
};

/// Runs argv in workdir with stdout/stderr captured to a log file there.
/// The child is killed hard once the timeout elapses.
inline RunResult run_command(const std::vector<std::string> &argv,
                             const std::string &workdir,
                             double timeout_seconds) {
  if (argv.empty())
    throw ValidationError("run_command: empty argv");

  const std::string log_path = workdir + "/command.log";
  const pid_t pid = ::fork();
  if (pid < 0)
    throw OptimizeError(OptimizeError::Kind::ProcessFailure,
                        "fork failed for '" + argv[0] + "'");
  if (pid == 0) {
    if (::chdir(workdir.c_str()) != 0)
      ::_exit(126);
    const int fd = ::open("command.log", O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::dup2(fd, STDERR_FILENO);
      ::close(fd);
    }
    std::vector<char *> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string &a : argv)
      cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }

  RunResult result;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeout_seconds);
  int status = 0;
  while (true) {
    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid)
      break;
    if (done < 0)
      throw OptimizeError(OptimizeError::Kind::ProcessFailure,
                          "waitpid failed for '" + argv[0] + "'");
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  if (!result.timed_out) {
    if (WIFEXITED(status))
      result.exit_code = WEXITSTATUS(status);
    else
      result.exit_code = -1;
  }

  std::ifstream log(log_path);
  if (log) {
    std::ostringstream ss;
    ss << log.rdbuf();
    result.output = ss.str();
  }
  return result;
}

/// Whitespace-split with `{placeholder}` substitution inside tokens.
/// Quoting is not supported; paths fed to external tools must be space
/// free (scratch directories are, by construction).
inline std::vector<std::string> split_command_template(
    const std::string &tmpl,
    const std::vector<std::pair<std::string, std::string>> &substitutions) {
  std::vector<std::string> argv;
  std::istringstream ss(tmpl);
  std::string token;
  while (ss >> token) {
    for (const auto &[key, value] : substitutions) {
      std::size_t pos;
      while ((pos = token.find(key)) != std::string::npos)
        token.replace(pos, key.size(), value);
    }
    argv.push_back(token);
  }
  return argv;
}

inline std::string join_command(const std::vector<std::string> &argv) {
  std::string out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i)
      out += ' ';
    out += argv[i];
  }
  return out;
}

} // namespace molbench

#endif // MOLBENCH_SUBPROCESS_HPP
