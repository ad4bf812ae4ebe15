#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <type_traits>

#include "json.hpp"

#include "sgframe/error.hpp"
#include "sgframe/transform.hpp"

namespace sgf {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'S', 'G', 'F', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(const std::string& in, std::size_t offset) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::string node_key(int j, int k) { return std::to_string(j) + ":" + std::to_string(k); }

Eigen::VectorXd read_vector(const json& value, Eigen::Index expected, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  if (static_cast<Eigen::Index>(value.size()) != expected) {
    throw ParseError(where + ": expected " + std::to_string(expected) + " values, found " +
                     std::to_string(value.size()));
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    const auto& x = value[static_cast<std::size_t>(i)];
    if (!x.is_number()) throw ParseError(where + "[" + std::to_string(i) + "]: expected a number");
    v[i] = x.get<double>();
  }
  return v;
}

} // namespace

std::string format_coefficients_json(const CoefficientTree& coef) {
  json doc;
  const auto& c0 = coef.c.at(0).at(0);
  doc["c0"] = std::vector<double>(c0.data(), c0.data() + c0.size());
  json d = json::object();
  for (std::size_t j = 0; j < coef.d.size(); ++j) {
    for (std::size_t k = 0; k < coef.d[j].size(); ++k) {
      const auto& v = coef.d[j][k];
      d[node_key(static_cast<int>(j), static_cast<int>(k))] =
          std::vector<double>(v.data(), v.data() + v.size());
    }
  }
  doc["d"] = std::move(d);
  return doc.dump(1) + "\n";
}

CoefficientTree parse_coefficients_json(const std::string& text, const PartitionTree& t,
                                        const FilterBanks& banks) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("coefficient file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("c0") || !doc.contains("d") || !doc["d"].is_object()) {
    throw ParseError("coefficient file: expected fields 'c0' and 'd'");
  }
  const int J = t.depth();
  std::vector<Eigen::Index> R(static_cast<std::size_t>(J) + 1, 1);
  for (int j = J - 1; j >= 0; --j) R[static_cast<std::size_t>(j)] = banks.at(j, 0).A.rows() * R[static_cast<std::size_t>(j) + 1];

  CoefficientTree coef;
  coef.c.resize(static_cast<std::size_t>(J) + 1);
  coef.c[0] = {read_vector(doc["c0"], R[0], "c0")};
  coef.d.resize(static_cast<std::size_t>(J));
  const json& d = doc["d"];
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < t.num_nodes(j); ++k) {
      const std::string key = node_key(j, k);
      if (!d.contains(key)) throw ParseError("coefficient file: missing d[\"" + key + "\"]");
      coef.d[static_cast<std::size_t>(j)].push_back(
          read_vector(d[key], banks.at(j, k).B.rows() * R[static_cast<std::size_t>(j) + 1], "d[\"" + key + "\"]"));
    }
  }
  if (static_cast<long>(d.size()) != [&] {
        long count = 0;
        for (int j = 0; j < J; ++j) count += t.num_nodes(j);
        return count;
      }()) {
    throw ParseError("coefficient file: 'd' has entries for nodes not in the tree");
  }
  return coef;
}

std::string format_coefficients_binary(const Eigen::VectorXd& flat) {
  std::string out(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(flat.size()));
  for (Eigen::Index i = 0; i < flat.size(); ++i) put_le<double>(out, flat[i]);
  return out;
}

Eigen::VectorXd parse_coefficients_binary(const std::string& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("binary coefficients: bad magic");
  }
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kVersion) throw ParseError("binary coefficients: unsupported version " + std::to_string(version));
  const auto m = get_le<std::uint64_t>(bytes, 8);
  if (bytes.size() != 16 + m * sizeof(double)) {
    throw ParseError("binary coefficients: header announces " + std::to_string(m) +
                     " values, payload has " + std::to_string((bytes.size() - 16) / sizeof(double)));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(m));
  for (std::uint64_t i = 0; i < m; ++i) out[static_cast<Eigen::Index>(i)] = get_le<double>(bytes, 16 + i * sizeof(double));
  return out;
}

} // namespace sgf
