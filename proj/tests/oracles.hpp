#pragma once

// Reference implementations written directly from the definitions, on plain
// strings and nested loops. Tests compare the library against these.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

inline std::uint64_t count(const std::string& pattern, const std::string& text) {
  std::uint64_t hits = 0;
  if (pattern.empty() || pattern.size() > text.size()) return 0;
  for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
    if (text.compare(i, pattern.size(), pattern) == 0) ++hits;
  }
  return hits;
}

inline std::string power(const std::string& w, std::uint64_t times) {
  std::string out;
  for (std::uint64_t i = 0; i < times; ++i) out += w;
  return out;
}

// Level words of the one-dimensional construction, as strings.
struct Level1d {
  std::vector<std::string> w;
  std::string a, b;
};

inline std::vector<Level1d> levels_1d(const std::vector<std::uint64_t>& params) {
  std::vector<Level1d> out{{{"0", "1"}, "", ""}};
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::uint64_t n = params[i];
    const Level1d& prev = out.back();
    const std::size_t k = i + 1;
    Level1d next;
    if (k == 1) {
      next.w = {power("0", n + 1), power("1", n + 1)};
      next.a = "0" + power("1", n);
      next.b = power("0", n) + "1";
    } else {
      const std::uint64_t e = (2 * k + 1) * n + 2 * k;
      for (const auto& w : prev.w) next.w.push_back(power(w, e));
      next.w.push_back(power(prev.a, e));
      next.w.push_back(power(prev.b, e));
      auto density = [&](const std::string& base) {
        std::string s;
        for (const auto& w : prev.w) s += power(base, n) + w;
        return s + power(base, n) + prev.a + power(base, n) + prev.b + power(base, n);
      };
      next.a = density(prev.a);
      next.b = density(prev.b);
    }
    out.push_back(std::move(next));
  }
  return out;
}

// d-dimensional grid with 1-based coordinates; axis 1 varies slowest.
struct Grid {
  std::vector<std::size_t> sides;
  std::vector<char> cells;

  std::size_t offset(const std::vector<std::size_t>& x) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < sides.size(); ++i) off = off * sides[i] + (x[i] - 1);
    return off;
  }
  char at(const std::vector<std::size_t>& x) const { return cells[offset(x)]; }
};

// Advances a 1-based coordinate through {1..sides}; false after the last one.
inline bool next(std::vector<std::size_t>& x, const std::vector<std::size_t>& sides) {
  for (std::size_t i = sides.size(); i-- > 0;) {
    if (++x[i] <= sides[i]) return true;
    x[i] = 1;
  }
  return false;
}

// w^(e)(x) = w(((x_i - 1) mod n) + 1).
inline char self_concat_cell(const Grid& w, const std::vector<std::size_t>& x) {
  std::vector<std::size_t> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] - 1) % w.sides[i] + 1;
  return w.at(y);
}

// The postcard: stamp m on first-axis block 2m+1 and block 3 of every other
// axis, the self-concatenation of w everywhere else. Stamps have side n.
inline char postcard_cell(const std::vector<Grid>& stamps, const Grid& w, const std::vector<std::size_t>& x) {
  const std::size_t n = w.sides[0];
  for (std::size_t m = 1; m <= stamps.size(); ++m) {
    bool inside = x[0] >= 2 * m * n + 1 && x[0] <= (2 * m + 1) * n;
    for (std::size_t i = 1; i < x.size() && inside; ++i) inside = x[i] >= 2 * n + 1 && x[i] <= 3 * n;
    if (inside) {
      std::vector<std::size_t> y(x);
      y[0] -= 2 * m * n;
      for (std::size_t i = 1; i < y.size(); ++i) y[i] -= 2 * n;
      return stamps[m - 1].at(y);
    }
  }
  return self_concat_cell(w, x);
}

// Number of axis-aligned placements of pattern inside text.
inline std::uint64_t count_d(const Grid& pattern, const Grid& text) {
  const std::size_t d = text.sides.size();
  std::vector<std::size_t> room(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (pattern.sides[i] > text.sides[i]) return 0;
    room[i] = text.sides[i] - pattern.sides[i] + 1;
  }
  std::uint64_t hits = 0;
  std::vector<std::size_t> k(d, 1);
  do {
    bool match = true;
    std::vector<std::size_t> y(d, 1);
    do {
      std::vector<std::size_t> z(d);
      for (std::size_t i = 0; i < d; ++i) z[i] = k[i] + y[i] - 1;
      match = pattern.at(y) == text.at(z);
    } while (match && next(y, pattern.sides));
    if (match) ++hits;
  } while (next(k, room));
  return hits;
}

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return mu;
}

}  // namespace oracle
