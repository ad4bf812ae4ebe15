#ifndef SGFRAME_IO_UTIL_HPP
#define SGFRAME_IO_UTIL_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace sgf {

/// Reads a whole file; throws IoError if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes content to path via a temporary sibling and rename, so a failed
/// write never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content);

/// Writes several files; all temporaries are written first and renamed only
/// once every write succeeded.
void write_files_atomic(const std::vector<std::pair<std::string, std::string>>& files);

/// Shortest decimal representation that round-trips a double.
std::string format_double(double value);

/// Signal text format: one value per line, vertex order.
Eigen::VectorXd parse_signal_text(const std::string& text);
std::string format_signal_text(const Eigen::VectorXd& values);

} // namespace sgf

#endif // SGFRAME_IO_UTIL_HPP
