#pragma once

// Internal helpers for cells of a hypercube 3^E, encoded as vectors over
// {0 = not started, 1 = executing, 2 = terminated}.

#include <cstdint>
#include <string>
#include <vector>

namespace hdml::detail {

using CubeCell = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kIdle = 0;
inline constexpr std::uint8_t kRunning = 1;
inline constexpr std::uint8_t kDone = 2;

inline int cube_dim(const CubeCell& v) {
  int n = 0;
  for (auto x : v) n += x == kRunning;
  return n;
}

inline std::size_t cube_code(const CubeCell& v) {
  std::size_t code = 0;
  for (std::size_t k = v.size(); k-- > 0;) code = code * 3 + v[k];
  return code;
}

inline CubeCell cube_decode(std::size_t code, std::size_t events) {
  CubeCell v(events);
  for (std::size_t k = 0; k < events; ++k) {
    v[k] = static_cast<std::uint8_t>(code % 3);
    code /= 3;
  }
  return v;
}

// Position in v of the i-th (1-based) executing event.
inline std::size_t running_event(const CubeCell& v, int i) {
  int seen = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == kRunning && ++seen == i) return k;
  }
  return v.size();
}

inline CubeCell cube_face(const CubeCell& v, int i, bool source) {
  CubeCell w = v;
  w[running_event(v, i)] = source ? kIdle : kDone;
  return w;
}

inline std::size_t cube_size(std::size_t events) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < events; ++k) n *= 3;
  return n;
}

inline std::string cube_name(const CubeCell& v) {
  std::string s;
  for (auto x : v) s.push_back(x == kIdle ? '0' : x == kRunning ? 'x' : '1');
  return s;
}

}  // namespace hdml::detail
