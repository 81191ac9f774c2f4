#include "treecs/holfin.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "treecs/error.hpp"

namespace treecs {

std::size_t matrix_rank(Matrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Matrix matrix_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t inner = b.size();
  const std::size_t p = inner == 0 ? 0 : b[0].size();
  Matrix out(n, std::vector<Rational>(p, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

namespace {

Rational l1(const std::vector<Rational>& row) {
  Rational s(0);
  for (const auto& v : row) s += abs_value(v);
  return s;
}

// Column x and sign when the row is +-(unit at x).
std::optional<std::pair<std::size_t, int>> signed_unit(const std::vector<Rational>& row) {
  std::optional<std::pair<std::size_t, int>> hit;
  for (std::size_t x = 0; x < row.size(); ++x) {
    if (row[x] == 0) continue;
    if (hit || abs_value(row[x]) != 1) return std::nullopt;
    hit = std::make_pair(x, row[x] > 0 ? 1 : -1);
  }
  return hit;
}

bool shape_ok(const Matrix& m, std::size_t rows, std::size_t cols) {
  return m.size() == rows &&
         std::all_of(m.begin(), m.end(), [cols](const auto& r) { return r.size() == cols; });
}

bool nonnegative(const Matrix& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& r) {
    return std::all_of(r.begin(), r.end(), [](const Rational& v) { return v >= 0; });
  });
}

std::string pt(std::size_t i) { return std::to_string(i); }

}  // namespace

HypothesisReport check_hypotheses(const FiniteOperator& op) {
  HypothesisReport rep;
  if (op.K == 0 || op.L == 0) {
    rep.failures.push_back("K and L must be positive");
    return rep;
  }
  if (!shape_ok(op.T, op.K, op.L)) rep.failures.push_back("T must be K x L");
  if (!shape_ok(op.P, op.K, op.K)) rep.failures.push_back("P must be K x K");
  if (!rep.ok()) return rep;

  std::vector<bool> covered(op.L, false);
  for (std::size_t y = 0; y < op.K; ++y) {
    const Rational n = l1(op.T[y]);
    if (n > 1) rep.failures.push_back("T row " + pt(y) + " has l1-norm " + to_string(n) + " > 1");
    if (auto u = signed_unit(op.T[y])) covered[u->first] = true;
  }
  for (std::size_t x = 0; x < op.L; ++x) {
    if (!covered[x]) {
      rep.failures.push_back("no row of T is +-(unit at " + pt(x) + "), so T is not isometric");
    }
  }

  if (matrix_mul(op.P, op.P) != op.P) rep.failures.push_back("P*P != P");
  if (matrix_mul(op.P, op.T) != op.T) rep.failures.push_back("P*T != T");
  bool some_unit_norm = false;
  for (std::size_t y = 0; y < op.K; ++y) {
    const Rational n = l1(op.P[y]);
    if (n > 1) rep.failures.push_back("P row " + pt(y) + " has l1-norm " + to_string(n) + " > 1");
    if (n == 1) some_unit_norm = true;
  }
  if (!some_unit_norm) rep.failures.push_back("no row of P has l1-norm 1, so ||P|| != 1");
  const std::size_t r = matrix_rank(op.P);
  if (r != op.L) {
    rep.failures.push_back("rank P = " + std::to_string(r) + " != L = " + std::to_string(op.L) +
                           ", so P is not onto the range of T");
  }
  return rep;
}

Extraction extract(const FiniteOperator& op) {
  const auto rep = check_hypotheses(op);
  if (!rep.ok()) throw DomainError("hypotheses fail: " + rep.failures.front());
  Extraction ex;
  ex.phi.assign(op.L, std::vector<Rational>(op.K, Rational(0)));
  std::vector<bool> seen(op.L, false);
  for (std::size_t y = 0; y < op.K; ++y) {
    const auto u = signed_unit(op.T[y]);
    if (!u) continue;
    const auto [x, sign] = *u;
    ex.F.push_back(y);
    ex.rho[y] = x;
    ex.sigma[y] = sign;
    std::vector<Rational> row = op.P[y];
    for (auto& v : row) v *= sign;
    if (!seen[x]) {
      ex.phi[x] = std::move(row);
      seen[x] = true;
    } else if (row != ex.phi[x]) {
      throw DomainError("phi(" + pt(x) + ") depends on the choice of point over it (row " + pt(y) + ")");
    }
  }
  return ex;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> mat_vec(const Matrix& m, const std::vector<Rational>& f) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) out[i] += m[i][j] * f[j];
  }
  return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

Rational small_rational(std::mt19937_64& rng, bool allow_negative) {
  const long den = 1 + static_cast<long>(rng() % 6);
  long num = static_cast<long>(rng() % static_cast<std::uint64_t>(4 * den + 1));
  if (allow_negative) num -= 2 * den;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rational> random_vector(std::mt19937_64& rng, std::size_t n, bool allow_negative) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = small_rational(rng, allow_negative);
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

std::vector<Rational> unit(std::size_t n, std::size_t at) {
  std::vector<Rational> v(n, Rational(0));
  v[at] = 1;
  return v;
}

}  // namespace

ConclusionReport verify_conclusions(const FiniteOperator& op, const Extraction& ex, std::size_t trials,
                                    std::uint64_t seed) {
  ConclusionReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  if (ex.phi.size() != op.L) {
    fail("phi has " + std::to_string(ex.phi.size()) + " rows, expected L = " + std::to_string(op.L));
    return rep;
  }

  std::vector<bool> hit(op.L, false);
  for (std::size_t y : ex.F) {
    if (!ex.rho.contains(y) || !ex.sigma.contains(y)) {
      fail("point " + pt(y) + " of F lacks rho or sigma");
      return rep;
    }
    if (ex.rho.at(y) >= op.L) {
      fail("rho(" + pt(y) + ") outside L");
      return rep;
    }
    hit[ex.rho.at(y)] = true;
  }
  for (std::size_t x = 0; x < op.L; ++x) {
    ++rep.checks;
    if (!hit[x]) fail("rho is not onto: " + pt(x) + " has no preimage");
  }

  // (i) and the norm of phi(x).
  for (std::size_t x = 0; x < op.L; ++x) {
    ++rep.checks;
    const Rational n = l1(ex.phi[x]);
    if (n != 1) fail("||phi(" + pt(x) + ")|| = " + to_string(n) + " != 1");
    for (std::size_t k = 0; k < op.K; ++k) {
      if (ex.phi[x][k] == 0) continue;
      ++rep.checks;
      auto it = ex.rho.find(k);
      if (it == ex.rho.end() || it->second != x) {
        fail("(i) phi(" + pt(x) + ") has mass " + to_string(ex.phi[x][k]) + " at " + pt(k) +
             " outside rho^-1(" + pt(x) + ")");
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> fs;
  for (std::size_t x = 0; x < op.L; ++x) fs.push_back(unit(op.L, x));
  for (std::size_t t = 0; t < trials; ++t) fs.push_back(random_vector(rng, op.L, true));
  std::vector<std::vector<Rational>> gs;
  for (std::size_t k = 0; k < op.K; ++k) gs.push_back(unit(op.K, k));
  for (std::size_t t = 0; t < trials; ++t) gs.push_back(random_vector(rng, op.K, true));

  // (ii)
  for (std::size_t a = 0; a < fs.size(); ++a) {
    const auto Tf = mat_vec(op.T, fs[a]);
    for (std::size_t y : ex.F) {
      ++rep.checks;
      const Rational rhs = ex.sigma.at(y) * fs[a][ex.rho.at(y)];
      if (Tf[y] != rhs) {
        fail("(ii) f#" + std::to_string(a) + " at y=" + pt(y) + ": Tf(y) = " + to_string(Tf[y]) +
             " but sigma(y) f(rho(y)) = " + to_string(rhs));
      }
    }
  }

  // (iii)
  for (std::size_t a = 0; a < gs.size(); ++a) {
    const auto Pg = mat_vec(op.P, gs[a]);
    for (std::size_t y : ex.F) {
      ++rep.checks;
      const Rational rhs = ex.sigma.at(y) * dot(ex.phi[ex.rho.at(y)], gs[a]);
      if (Pg[y] != rhs) {
        fail("(iii) g#" + std::to_string(a) + " at y=" + pt(y) + ": Pg(y) = " + to_string(Pg[y]) +
             " but sigma(y) <phi(rho(y)), g> = " + to_string(rhs));
      }
    }
  }

  // (a) and (b)
  if (nonnegative(op.T)) {
    for (std::size_t y : ex.F) {
      ++rep.checks;
      if (ex.sigma.at(y) != 1) fail("(a) T is positive but sigma(" + pt(y) + ") = -1");
    }
    if (nonnegative(op.P)) {
      for (std::size_t x = 0; x < op.L; ++x) {
        ++rep.checks;
        const bool prob = std::all_of(ex.phi[x].begin(), ex.phi[x].end(), [](const Rational& v) { return v >= 0; }) &&
                          std::accumulate(ex.phi[x].begin(), ex.phi[x].end(), Rational(0)) == 1;
        if (!prob) fail("(b) T and P are positive but phi(" + pt(x) + ") is not a probability measure");
      }
    }
  }
  return rep;
}

FiniteOperator random_instance(std::size_t K, std::size_t L, std::uint64_t seed) {
  if (L == 0 || K < L) throw DomainError("random_instance needs K >= L >= 1");
  std::mt19937_64 rng(seed);
  const bool positive = rng() % 2 == 0;

  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = K; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  // fiber[y] = x when y carries the signed unit row at x.
  std::vector<std::optional<std::size_t>> fiber(K);
  for (std::size_t x = 0; x < L; ++x) fiber[order[x]] = x;
  for (std::size_t k = L; k < K; ++k) {
    if (rng() % 2 == 0) fiber[order[k]] = rng() % L;
  }
  std::vector<int> sign(K, 1);
  if (!positive) {
    for (auto& s : sign) s = rng() % 2 == 0 ? 1 : -1;
  }

  FiniteOperator op;
  op.K = K;
  op.L = L;
  op.T.assign(K, std::vector<Rational>(L, Rational(0)));
  for (std::size_t y = 0; y < K; ++y) {
    if (fiber[y]) {
      op.T[y][*fiber[y]] = sign[y];
      continue;
    }
    auto row = random_vector(rng, L, !positive);
    const Rational n = l1(row);
    if (n > 1) {
      for (auto& v : row) v /= n;
    }
    op.T[y] = std::move(row);
  }

  Matrix phi(L, std::vector<Rational>(K, Rational(0)));
  for (std::size_t x = 0; x < L; ++x) {
    std::vector<std::size_t> members;
    for (std::size_t y = 0; y < K; ++y) {
      if (fiber[y] == x) members.push_back(y);
    }
    std::vector<long> weights;
    long total = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      weights.push_back(static_cast<long>(rng() % 4));
      total += weights.back();
    }
    if (total == 0) {
      weights[0] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      Rational c(weights[i], total);
      c.canonicalize();
      phi[x][members[i]] = sign[members[i]] * c;
    }
  }
  op.P = matrix_mul(op.T, phi);
  return op;
}

}  // namespace treecs
