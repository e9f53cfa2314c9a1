#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "symcert/error.hpp"
#include "symcert/solver.hpp"

namespace symcert {

namespace {

[[noreturn]] void solve_error(const std::string& message) { throw SpecError(Stage::Solve, message); }

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    std::string pattern = (std::filesystem::temp_directory_path() / "symcert-XXXXXX.cnf").string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    const int fd = ::mkstemps(buf.data(), 4);
    if (fd < 0) throw SpecError(Stage::Io, std::string("cannot create temporary file: ") + std::strerror(errno));
    path_ = buf.data();
    std::size_t written = 0;
    while (written < contents.size()) {
      const ssize_t n = ::write(fd, contents.data() + written, contents.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw SpecError(Stage::Io, "cannot write temporary file " + path_);
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> parts;
  for (std::string part; in >> part;) parts.push_back(part);
  return parts;
}

}  // namespace

SolveOutcome solve_external(const Cnf& cnf, const std::string& command, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> args = split_command(command);
  if (args.empty()) solve_error("empty solver command");
  const TempFile input(write_dimacs(cnf));
  args.push_back(input.path());

  int out_pipe[2];
  if (::pipe(out_pipe) != 0) solve_error(std::string("pipe failed: ") + std::strerror(errno));

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    solve_error(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::setpgid(0, 0);
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    _exit(127);
  }
  ::setpgid(pid, pid);
  ::close(out_pipe[1]);

  std::string output;
  bool timed_out = false;
  char buf[65536];
  while (true) {
    int wait_ms = -1;
    if (budget.max_seconds) {
      const double left =
          *budget.max_seconds - std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (left <= 0) {
        timed_out = true;
        break;
      }
      wait_ms = static_cast<int>(left * 1000.0) + 1;
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;  // deadline re-checked above
    const ssize_t n = ::read(out_pipe[0], buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(out_pipe[0]);
  if (timed_out) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  SolveOutcome outcome;
  outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (timed_out) {
    outcome.status = SatStatus::Unknown;
    return outcome;
  }
  if (WIFSIGNALED(status)) {
    solve_error("external solver '" + args[0] + "' terminated by signal " + std::to_string(WTERMSIG(status)));
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && output.empty()) {
    solve_error("cannot run external solver '" + args[0] + "'");
  }

  ParsedModel parsed = parse_dimacs_model(output);
  outcome.status = parsed.status;
  if (parsed.status == SatStatus::Sat) {
    // unmentioned variables default to false
    Assignment model(static_cast<std::uint32_t>(cnf.num_vars));
    for (int v = 1; v <= cnf.num_vars; ++v) {
      model.set(static_cast<std::uint32_t>(v), parsed.assignment.get(static_cast<std::uint32_t>(v)).value_or(false));
    }
    if (!satisfies(cnf, model)) solve_error("external solver '" + args[0] + "' returned a model that violates a clause");
    outcome.model = std::move(model);
  }
  return outcome;
}

}  // namespace symcert
