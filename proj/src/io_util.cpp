#include "sgframe/io_util.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "sgframe/error.hpp"
#include "sgframe/parallel.hpp"

namespace sgf {

namespace {

unsigned g_max_threads = 0;

std::string temp_sibling(const std::string& path) {
  static std::mt19937_64 rng(std::random_device{}());
  std::ostringstream os;
  os << path << ".tmp." << std::hex << rng();
  return os.str();
}

void write_raw(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace

void set_max_threads(unsigned n) { g_max_threads = n; }

unsigned max_threads() {
  if (g_max_threads != 0) return g_max_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  write_files_atomic({{path, content}});
}

void write_files_atomic(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> temps;
  temps.reserve(files.size());
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
  };
  try {
    for (const auto& [path, content] : files) {
      temps.push_back(temp_sibling(path));
      write_raw(temps.back(), content);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::error_code ec;
      std::filesystem::rename(temps[i], files[i].first, ec);
      if (ec) throw IoError("cannot rename into '" + files[i].first + "': " + ec.message());
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Eigen::VectorXd parse_signal_text(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double v = 0.0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) {
      throw ParseError("signal line " + std::to_string(lineno) + ": expected one number, got '" +
                       line + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ParseError("signal file contains no values");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string format_signal_text(const Eigen::VectorXd& values) {
  std::string out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

} // namespace sgf
