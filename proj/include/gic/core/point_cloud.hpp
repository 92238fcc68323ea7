#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <initializer_list>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gic/core/types.hpp"

namespace gic {

// N points in R^d stored row-major. Point i keeps index i for its lifetime.
class PointCloud {
 public:
  PointCloud() = default;

  explicit PointCloud(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DimensionError("point cloud dimension must be at least 1");
  }

  PointCloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim == 0) throw DimensionError("point cloud dimension must be at least 1");
    if (coords_.size() % dim != 0) {
      throw FormatError("coordinate count is not a multiple of the dimension");
    }
  }

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return PointCloud{};
    PointCloud cloud(rows.front().size());
    for (const auto& row : rows) cloud.push_back(row);
    return cloud;
  }

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> p) {
    if (dim_ == 0) {
      if (p.empty()) throw DimensionError("point cloud dimension must be at least 1");
      dim_ = p.size();
    }
    if (p.size() != dim_) throw FormatError("point has wrong dimension");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  void push_back(std::initializer_list<double> p) { push_back(std::span<const double>(p.begin(), p.size())); }

  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

// Pairs (i, j), i < j, of points with identical coordinates. Duplicates are
// legal input; callers surface them as warnings.
inline std::vector<std::pair<Vertex, Vertex>> find_duplicates(const PointCloud& cloud) {
  std::vector<Vertex> order(cloud.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  auto less = [&](Vertex a, Vertex b) {
    const auto pa = cloud[a];
    const auto pb = cloud[b];
    if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
    if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) return false;
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<std::pair<Vertex, Vertex>> dups;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && std::ranges::equal(cloud[order[i]], cloud[order[j]])) {
      dups.emplace_back(std::min(order[i], order[j]), std::max(order[i], order[j]));
      ++j;
    }
    i = j;
  }
  std::sort(dups.begin(), dups.end());
  return dups;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits on any run of whitespace and/or commas.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw FormatError("line " + std::to_string(line_no) + ": bad coordinate '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace detail

// One point per row; whitespace- or comma-delimited; '#' lines are comments.
inline PointCloud parse_points(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = detail::split_fields(body);
    if (dim == 0) {
      dim = fields.size();
    } else if (fields.size() != dim) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                        " columns, found " + std::to_string(fields.size()));
    }
    for (auto f : fields) coords.push_back(detail::parse_double(f, line_no));
  }
  if (dim == 0) throw EmptyInputError("points input contains no rows");
  return PointCloud(dim, std::move(coords));
}

inline PointCloud load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path + "'");
  return parse_points(in);
}

inline void write_points(std::ostream& out, const PointCloud& cloud) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << p[k];
    out << '\n';
  }
}

}  // namespace gic
