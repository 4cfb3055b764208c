#include "camshift/sft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "camshift/error.hpp"

namespace camshift::sft {

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix to_big(const Matrix& a) {
  BigMatrix out(a.dim(), std::vector<BigInt>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out[i][j] = a.at(i, j);
  }
  return out;
}

BigMatrix multiply(const BigMatrix& x, const BigMatrix& y) {
  const std::size_t n = x.size();
  BigMatrix out(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) fail(ErrorCode::invalid_parameter, std::string(what) + " must be at least 1");
}

// BFS depths from vertex 0; in a strongly connected graph the period is the
// gcd of depth[u] + 1 - depth[v] over all edges u -> v.
std::uint64_t graph_period(const Matrix& a) {
  const std::size_t n = a.dim();
  std::vector<std::int64_t> depth(n, -1);
  std::queue<std::size_t> queue;
  depth[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (a.at(u, v) > 0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push(v);
      }
    }
  }
  std::uint64_t g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (a.at(u, v) == 0) continue;
      const auto diff = depth[u] + 1 - depth[v];
      g = std::gcd(g, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
    }
  }
  return g;
}

Rational power(const Rational& x, std::uint64_t m) {
  Rational out = 1;
  for (std::uint64_t i = 0; i < m; ++i) out *= x;
  return out;
}

}  // namespace

Matrix::Matrix(std::vector<std::vector<std::uint64_t>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) fail(ErrorCode::invalid_parameter, "matrix must have dimension at least 1");
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) fail(ErrorCode::invalid_parameter, "matrix must be square");
  }
}

bool Matrix::irreducible() const {
  const std::size_t n = dim();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    std::size_t reached = 0;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (rows_[u][v] > 0 && !seen[v]) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    // Every vertex, s included, must be reachable by a path of positive length.
    if (reached != n) return false;
  }
  return true;
}

nlohmann::json Matrix::to_json() const { return rows_; }

Matrix Matrix::from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::malformed_input, "matrix must be an array of rows");
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorCode::malformed_input, "matrix rows must be arrays");
    auto& out = rows.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
        fail(ErrorCode::malformed_input, "matrix entries must be nonnegative integers");
      }
      out.push_back(x.get<std::uint64_t>());
    }
  }
  try {
    return Matrix(std::move(rows));
  } catch (const Error& e) {
    fail(ErrorCode::malformed_input, e.what());
  }
}

int mobius(std::uint64_t n) {
  require_positive(n, "Mobius argument");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

BigInt trace_power(const Matrix& a, std::uint64_t n) {
  BigMatrix result(a.dim(), std::vector<BigInt>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) result[i][i] = 1;
  BigMatrix base = to_big(a);
  for (auto e = n; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, base);
    if (e > 1) base = multiply(base, base);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) trace += result[i][i];
  return trace;
}

BigInt tr_n(const Matrix& a, std::uint64_t n) {
  require_positive(n, "period");
  BigInt sum = 0;
  for (auto d : divisors(n)) {
    const int mu = mobius(n / d);
    if (mu != 0) sum += mu * trace_power(a, d);
  }
  return sum;
}

BigInt brute_periodic_points(const Matrix& a, std::uint64_t n) {
  require_positive(n, "period");
  if (a.dim() > kBruteMaxDim || n > kBruteMaxPeriod) {
    fail(ErrorCode::enumeration_too_large, "brute force is limited to dimension " +
                                               std::to_string(kBruteMaxDim) + " and period " +
                                               std::to_string(kBruteMaxPeriod));
  }
  if (trace_power(a, n) > kBruteMaxSequences) {
    fail(ErrorCode::enumeration_too_large, "more than " + std::to_string(kBruteMaxSequences) +
                                               " closed edge sequences of length " + std::to_string(n));
  }
  struct Edge {
    std::size_t from, to;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (std::uint64_t c = 0; c < a.at(i, j); ++c) {
        out[i].push_back(edges.size());
        edges.push_back({i, j});
      }
    }
  }
  const auto len = static_cast<std::size_t>(n);
  std::vector<std::size_t> seq(len);
  const auto proper = divisors(n);
  auto least_period_is_n = [&] {
    for (auto p : proper) {
      if (p == n) break;
      bool fixed = true;
      for (std::size_t i = 0; i + p < len && fixed; ++i) fixed = seq[i] == seq[i + p];
      if (fixed) return false;
    }
    return true;
  };
  std::uint64_t count = 0;
  auto extend = [&](auto&& self, std::size_t pos, std::size_t vertex) -> void {
    for (auto e : out[vertex]) {
      seq[pos] = e;
      if (pos + 1 == len) {
        if (edges[e].to == edges[seq[0]].from && least_period_is_n()) ++count;
      } else {
        self(self, pos + 1, edges[e].to);
      }
    }
  };
  for (std::size_t v = 0; v < a.dim(); ++v) extend(extend, 0, v);
  return count;
}

nlohmann::json Census::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [n, q] : counts) out[std::to_string(n)] = q.str();
  return out;
}

Census census(const Matrix& a, std::uint64_t n_max) {
  require_positive(n_max, "census range");
  Census out{a, {}};
  for (std::uint64_t n = 1; n <= n_max; ++n) out.counts[n] = tr_n(a, n);
  return out;
}

nlohmann::json Perron::to_json() const {
  return {{"lambda", lambda},
          {"lower", rational_to_json(lower)},
          {"upper", rational_to_json(upper)},
          {"residual", residual},
          {"iterations", iterations},
          {"periodic", periodic}};
}

Perron perron_eigenvalue(const Matrix& a, double tolerance, std::uint64_t iteration_cap) {
  if (!(tolerance > 0)) fail(ErrorCode::invalid_parameter, "tolerance must be positive");
  if (!a.irreducible()) fail(ErrorCode::reducible_matrix, "Perron eigenvalue needs an irreducible matrix");
  const std::size_t n = a.dim();
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += static_cast<double>(a.at(i, j)) * v[j];
    }
    return w;
  };
  // Iterating with A + I shares the Perron vector of A and converges for periodic graphs too.
  std::vector<double> v(n, 1.0);
  Perron out;
  out.periodic = graph_period(a) > 1;
  for (;;) {
    const auto av = apply(v);
    double lo = av[0] / v[0];
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, av[i] / v[i]);
      hi = std::max(hi, av[i] / v[i]);
    }
    if (hi - lo < tolerance) break;
    if (++out.iterations > iteration_cap) {
      fail(ErrorCode::no_convergence, "power iteration did not converge in " + std::to_string(iteration_cap) +
                                          " steps");
    }
    double top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += av[i];
      top = std::max(top, v[i]);
    }
    for (auto& x : v) x /= top;
  }
  const auto av = apply(v);
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += v[i] * av[i];
    den += v[i] * v[i];
  }
  out.lambda = num / den;
  double res = 0;
  double vmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, std::abs(av[i] - out.lambda * v[i]));
    vmax = std::max(vmax, std::abs(v[i]));
  }
  out.residual = res / vmax;
  // The doubles in v are exact dyadic rationals, so the row ratios bound lambda_A exactly.
  for (std::size_t i = 0; i < n; ++i) {
    const Rational vi(v[i]);
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += Rational(BigInt(a.at(i, j))) * Rational(v[j]);
    const Rational ratio = row / vi;
    if (i == 0 || ratio < out.lower) out.lower = ratio;
    if (i == 0 || ratio > out.upper) out.upper = ratio;
  }
  return out;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

BigInt tower_qn(std::uint64_t m, std::uint64_t n) {
  require_positive(m, "tower height");
  require_positive(n, "period");
  if (n % m != 0) return 0;
  static const Matrix full_two(std::vector<std::vector<std::uint64_t>>{{2}});
  return BigInt(m) * tr_n(full_two, n / m);
}

bool EmbeddingReport::periodic_ok() const {
  return std::all_of(periodic.begin(), periodic.end(), [](const PeriodicRow& r) { return r.pass; });
}

nlohmann::json EmbeddingReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : periodic) {
    rows.push_back({{"n", r.n}, {"tower", r.tower.str()}, {"target", r.target.str()}, {"pass", r.pass}});
  }
  return {{"m", m},
          {"n_max", n_max},
          {"perron", perron.to_json()},
          {"entropy", std::string(to_string(entropy))},
          {"periodic", std::move(rows)},
          {"periodic_ok", periodic_ok()},
          {"feasible", feasible()}};
}

EmbeddingReport embedding_feasibility(const Matrix& a, std::uint64_t m, std::uint64_t n_max, double tolerance) {
  require_positive(m, "tower height");
  if (n_max < m) fail(ErrorCode::invalid_parameter, "period range must reach the tower height");
  EmbeddingReport out;
  out.m = m;
  out.n_max = n_max;
  out.perron = perron_eigenvalue(a, tolerance);
  // (log 2)/m < log lambda  <=>  lambda^m > 2, decided on the exact bracket.
  const Rational two = 2;
  if (power(out.perron.lower, m) > two) {
    out.entropy = Verdict::pass;
  } else if (power(out.perron.upper, m) <= two) {
    out.entropy = Verdict::fail;
  } else {
    out.entropy = Verdict::inconclusive;
  }
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    PeriodicRow row{n, tower_qn(m, n), tr_n(a, n), false};
    row.pass = row.tower <= row.target;
    out.periodic.push_back(std::move(row));
  }
  return out;
}

std::optional<std::uint64_t> smallest_feasible_height(const Matrix& a, std::uint64_t m_cap, std::uint64_t n_max,
                                                      double tolerance) {
  for (std::uint64_t m = 1; m <= m_cap; ++m) {
    if (embedding_feasibility(a, m, std::max(n_max, m), tolerance).feasible()) return m;
  }
  return std::nullopt;
}

}  // namespace camshift::sft
