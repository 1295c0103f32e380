// ids.hpp — structured vertex/edge identifiers, their total order, and the
// error hierarchy shared by the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphends {

using VertexId = std::string;
using EdgeId = std::string;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violations and invalid parameters.
struct InvalidArgument : Error {
  using Error::Error;
};

// Unknown family / loop / ray names.
struct UnknownName : Error {
  using Error::Error;
};

// Structural problems: disconnected graphs, bad paths, containment violations.
struct GraphError : Error {
  using Error::Error;
};

// Ill-formed loop specifications (segments that do not concatenate, rays in
// different components at infinity, segments leaving the generated region).
struct LoopError : Error {
  using Error::Error;
};

// Pairing enumeration would exceed the configured cap.
struct CapExceeded : Error {
  using Error::Error;
};

// Malformed external input (JSON documents, word literals).
struct FormatError : Error {
  using Error::Error;
};

namespace detail {

inline bool segment_is_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size() || s.size() - i > 18) return false;  // 18 digits fit in i64
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline int compare_segments(std::string_view a, std::string_view b) {
  if (segment_is_integer(a) && segment_is_integer(b)) {
    const long long va = std::stoll(std::string(a));
    const long long vb = std::stoll(std::string(b));
    if (va != vb) return va < vb ? -1 : 1;
    return 0;
  }
  const int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace detail

// Total order used everywhere determinism matters (vertex sets, component
// ordering, chord orientation). Identifiers are ':'-separated segments;
// segments that parse as integers compare numerically ("b:2" < "b:10"),
// other segments compare bytewise, and a strict prefix sorts first.
inline int compare_ids(std::string_view a, std::string_view b) {
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    std::size_t ja = a.find(':', ia);
    std::size_t jb = b.find(':', ib);
    if (ja == std::string_view::npos) ja = a.size();
    if (jb == std::string_view::npos) jb = b.size();
    const int c = detail::compare_segments(a.substr(ia, ja - ia), b.substr(ib, jb - ib));
    if (c != 0) return c;
    ia = ja + 1;
    ib = jb + 1;
  }
  const bool more_a = ia < a.size();
  const bool more_b = ib < b.size();
  if (more_a == more_b) return 0;
  return more_a ? 1 : -1;
}

inline bool id_less(std::string_view a, std::string_view b) {
  return compare_ids(a, b) < 0;
}

struct IdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return id_less(a, b); }
};

}  // namespace graphends
