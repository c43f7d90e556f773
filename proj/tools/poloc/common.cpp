#include "common.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "poloc/io/atomic_file.hpp"

namespace poloc::cli {

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.empty()) throw UsageError("empty grid");
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number in grid '" + spec + "': '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number in grid '" + spec + "': '" + s + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("range must look like start:stop:step, got '" + spec + "'");
    double a = to_double(parts[0]), b = to_double(parts[1]), s = to_double(parts[2]);
    if (!(s > 0) || b < a) throw UsageError("range '" + spec + "' is empty");
    for (long i = 0;; ++i) {
      double v = a + static_cast<double>(i) * s;
      if (v > b + 1e-9 * std::max(1.0, std::abs(b))) break;
      out.push_back(v);
    }
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  }
  if (out.empty()) throw UsageError("grid '" + spec + "' is empty");
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::filesystem::path& path, const std::string& content) {
  io::write_file_atomic(path, std::string_view(content));
}

namespace {
std::string g_command_line;
}

const std::string& command_line() { return g_command_line; }

void set_command_line(int argc, char** argv) {
  g_command_line = "poloc";
  for (int i = 1; i < argc; ++i) {
    g_command_line += ' ';
    g_command_line += argv[i];
  }
}

int& exit_status() {
  static int status = kOk;
  return status;
}

}  // namespace poloc::cli
