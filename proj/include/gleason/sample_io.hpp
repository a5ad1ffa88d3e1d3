// Copyright 2026 The Gleason Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text (projector, value) sample files.
//
//   gleason-samples 1
//   dim <d> count <n>
//   <rank> <value> <re_00> <im_00> <re_01> <im_01> ... <re_{d-1,d-1}> <im_{d-1,d-1}>
//
// one line per sample, matrix entries row-major, numbers in shortest
// round-trip form. Blank lines and lines starting with '#' are ignored.

#ifndef GLEASON_SAMPLE_IO_HPP
#define GLEASON_SAMPLE_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gleason/hilbert.hpp"

namespace gleason {

inline constexpr int kSampleFormatVersion = 1;

struct LabeledSample {
  Projector projector;
  double value = 0.0;
};

namespace detail {

inline void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_field(std::string_view s, const std::string& where) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument(where + ": malformed number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

inline std::string format_samples(int d, const std::vector<LabeledSample>& samples) {
  std::string out = "gleason-samples " + std::to_string(kSampleFormatVersion) + "\n";
  out += "dim " + std::to_string(d) + " count " + std::to_string(samples.size()) + "\n";
  for (const auto& s : samples) {
    if (s.projector.dim() != d) throw DimensionMismatch(d, s.projector.dim(), "format_samples");
    out += std::to_string(s.projector.rank());
    out += ' ';
    detail::append_number(out, s.value);
    const Matrix& m = s.projector.matrix();
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        out += ' ';
        detail::append_number(out, m(r, c).real());
        out += ' ';
        detail::append_number(out, m(r, c).imag());
      }
    }
    out += '\n';
  }
  return out;
}

struct SampleFile {
  int dim = 0;
  std::vector<LabeledSample> samples;
};

/// Parses sample-file text. `source` prefixes error messages. Each matrix is
/// validated as a projector of the stated rank.
inline SampleFile parse_samples(std::string_view text, const std::string& source = "<input>") {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    const auto fields = detail::split_ws(line);
    if (!fields.empty() && fields.front().front() != '#') lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  auto where = [&](std::size_t k) { return source + ": record " + std::to_string(k); };
  if (lines.size() < 2) throw InvalidArgument(source + ": missing sample-file header");
  const auto magic = detail::split_ws(lines[0]);
  if (magic.size() != 2 || magic[0] != "gleason-samples" ||
      detail::parse_field<int>(magic[1], source) != kSampleFormatVersion) {
    throw InvalidArgument(source + ": not a version-1 sample file");
  }
  const auto header = detail::split_ws(lines[1]);
  if (header.size() != 4 || header[0] != "dim" || header[2] != "count") {
    throw InvalidArgument(source + ": expected 'dim <d> count <n>'");
  }
  SampleFile file;
  file.dim = detail::parse_field<int>(header[1], source);
  const auto count = detail::parse_field<long long>(header[3], source);
  if (file.dim < 1 || count < 0) throw InvalidArgument(source + ": invalid dim or count");
  if (static_cast<long long>(lines.size()) - 2 != count) {
    throw InvalidArgument(source + ": header announces " + std::to_string(count) + " samples, found " +
                          std::to_string(lines.size() - 2));
  }
  const int d = file.dim;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto f = detail::split_ws(lines[k]);
    if (static_cast<int>(f.size()) != 2 + 2 * d * d) {
      throw InvalidArgument(where(k - 1) + ": expected " + std::to_string(2 + 2 * d * d) + " fields");
    }
    const int rank = detail::parse_field<int>(f[0], where(k - 1));
    const double value = detail::parse_field<double>(f[1], where(k - 1));
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const std::size_t at = 2 + 2 * (static_cast<std::size_t>(r) * d + c);
        m(r, c) = Complex(detail::parse_field<double>(f[at], where(k - 1)),
                          detail::parse_field<double>(f[at + 1], where(k - 1)));
      }
    }
    Projector p = [&] {
      try {
        return Projector::from_matrix(m, 1e-8);
      } catch (const Error& e) {
        throw InvalidArgument(where(k - 1) + ": " + e.what());
      }
    }();
    if (p.rank() != rank) throw InvalidArgument(where(k - 1) + ": rank field disagrees with trace");
    file.samples.push_back({std::move(p), value});
  }
  return file;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline SampleFile read_samples(const std::string& path) {
  return parse_samples(read_text_file(path), path);
}

}  // namespace gleason

#endif  // GLEASON_SAMPLE_IO_HPP
