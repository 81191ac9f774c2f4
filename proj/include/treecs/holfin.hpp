#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "treecs/rational.hpp"

namespace treecs {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact rank by Gaussian elimination.
std::size_t matrix_rank(Matrix m);
Matrix matrix_mul(const Matrix& a, const Matrix& b);

/// Isometry T: C(L) -> C(K) and projection P on C(K) for finite K, L.
/// Points are indexed from 0. Row y of T is the functional f -> (Tf)(y).
struct FiniteOperator {
  std::size_t K = 0;
  std::size_t L = 0;
  Matrix T;  // K x L
  Matrix P;  // K x K
  friend bool operator==(const FiniteOperator&, const FiniteOperator&) = default;
};

struct HypothesisReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks shapes; T rows of l1-norm <= 1 with a +-unit row for every column;
/// P*P = P, P*T = T, P rows of l1-norm <= 1 with one of norm 1; rank P = L so
/// that P maps onto the range of T.
HypothesisReport check_hypotheses(const FiniteOperator& op);

struct Extraction {
  std::vector<std::size_t> F;
  std::map<std::size_t, std::size_t> rho;  // F -> L
  std::map<std::size_t, int> sigma;        // F -> {-1, +1}
  Matrix phi;                              // L x K, row x is phi(x)
  friend bool operator==(const Extraction&, const Extraction&) = default;
};

/// F = rows of T equal to +-(unit at x); sigma the sign, rho the x;
/// phi(x) = sigma(y) row_y(P) for the smallest y over x. Throws DomainError if
/// the hypotheses fail or another y over x gives a different phi(x).
Extraction extract(const FiniteOperator& op);

struct ConclusionReport {
  std::vector<std::string> violations;
  std::size_t checks = 0;
  bool ok() const { return violations.empty(); }
};

/// Exact check of supp phi(x) in rho^-1(x), Tf(y) = sigma(y) f(rho(y)) and
/// Pg(y) = sigma(y) <phi(rho(y)), g> on F, over all basis functions and
/// `trials` seeded random ones; plus ||phi(x)|| = 1, rho onto L, and the
/// positivity clauses when T (and P) are positive.
ConclusionReport verify_conclusions(const FiniteOperator& op, const Extraction& ex, std::size_t trials,
                                    std::uint64_t seed = 0);

/// Seeded instance with K >= L >= 1 passing check_hypotheses: disjoint fibers
/// G_x carry signed unit rows of T, the other rows are small rational rows of
/// l1-norm <= 1, phi(x) is a convex combination of signed point masses on G_x
/// and P = T * Phi. About half the seeds give a positive instance.
FiniteOperator random_instance(std::size_t K, std::size_t L, std::uint64_t seed);

}  // namespace treecs
