#pragma once

// Matrix files.
//
// CSV: one matrix row per line, comma separated, each value in the shortest
// scientific form that round-trips exactly.
//
// OJL1 binary, all fields little-endian:
//   bytes 0..3   magic "OJL1"
//   u32          n (rows)
//   u32          m (columns)
//   f64          lambda_star
//   f64          eps
//   f64[n * m]   entries, row-major

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "ojl/error.hpp"
#include "ojl/linalg.hpp"
#include "ojl/projector.hpp"

namespace ojl {

inline constexpr std::array<char, 4> kBinaryMagic = {'O', 'J', 'L', '1'};

/// Shortest exact decimal form in scientific notation.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific);
  if (ec != std::errc()) throw io_error("cannot format value");
  return std::string(buf.data(), end);
}

inline double parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw io_error("not a number: '" + std::string(field) + "'");
  }
  return v;
}

template <typename Derived>
void write_csv(std::ostream& out, const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed");
}

/// Reads a rectangular numeric CSV; blank lines are skipped. Zero rows give a
/// 0 x 0 matrix.
inline RowMatrix read_csv(std::istream& in) {
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Eigen::Index count = 0;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      values.push_back(parse_double(rest.substr(0, comma)));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols >= 0 && count != cols) {
      throw io_error("ragged CSV: row " + std::to_string(rows + 1) + " has " + std::to_string(count) +
                     " fields, expected " + std::to_string(cols));
    }
    cols = count;
    ++rows;
  }
  if (in.bad()) throw io_error("read failed");
  if (rows == 0) return RowMatrix(0, 0);
  return Eigen::Map<const RowMatrix>(values.data(), rows, cols);
}

namespace detail {

template <typename T>
void put_le(std::ostream& out, T v) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw io_error("truncated OJL1 file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

inline void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace detail

inline void write_binary(std::ostream& out, const ProjectionMatrix& a) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  detail::put_le(out, static_cast<std::uint32_t>(a.rows()));
  detail::put_le(out, static_cast<std::uint32_t>(a.cols()));
  detail::put_f64(out, a.lambda());
  detail::put_f64(out, a.spec().eps());
  const RowMatrix& e = a.entries();
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) detail::put_f64(out, e(i, j));
  }
  if (!out) throw io_error("write failed");
}

inline ProjectionMatrix read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBinaryMagic) throw io_error("not an OJL1 file");
  const auto n = detail::get_le<std::uint32_t>(in);
  const auto m = detail::get_le<std::uint32_t>(in);
  const double lambda = detail::get_f64(in);
  const double eps = detail::get_f64(in);
  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(m, n, eps);
  } catch (const std::logic_error& err) {
    throw io_error(std::string("invalid OJL1 header: ") + err.what());
  }
  // Grow with the data actually present so a corrupt header cannot force a huge allocation.
  std::vector<double> values;
  const std::uint64_t count = std::uint64_t{n} * m;
  for (std::uint64_t k = 0; k < count; ++k) values.push_back(detail::get_f64(in));
  RowMatrix e = Eigen::Map<const RowMatrix>(values.data(), n, m);
  try {
    return {std::move(e), *spec, lambda};
  } catch (const std::logic_error& err) {
    throw io_error(std::string("invalid OJL1 header: ") + err.what());
  }
}

/// True when the stream starts with the OJL1 magic; the stream position is restored.
inline bool looks_binary(std::istream& in) {
  std::array<char, 4> magic{};
  const auto start = in.tellg();
  const bool ok = static_cast<bool>(in.read(magic.data(), magic.size())) && magic == kBinaryMagic;
  in.clear();
  in.seekg(start);
  return ok;
}

}  // namespace ojl
