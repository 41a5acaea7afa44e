#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "gapforge/frontend.hpp"
#include "gapforge/linalg.hpp"
#include "support/oracles.hpp"

namespace gapforge {
namespace {

using testing::for_each_tuple;
using testing::matrix_rank_by_counting;
using testing::random_matrix;

Matrix mat(const FieldPtr& f, std::size_t r, std::size_t c, std::vector<Elem> e) { return Matrix(f, r, c, std::move(e)); }

TEST(Weight, CountsNonzeros) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(weight(Vector(f2, {1, 0, 1, 0})), 2u);
  EXPECT_EQ(weight(Vector(f2, 5)), 0u);
}

TEST(Rank, SmallExamples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(rank(mat(f2, 2, 2, {1, 1, 1, 1})), 1u);
  EXPECT_EQ(rank(Matrix::identity(f2, 4)), 4u);
  EXPECT_EQ(rank(Matrix(f2, 3, 2)), 0u);

  auto f9 = make_field(3, 2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vector u(f9, 4), v(f9, 3);
    for (auto& e : u.entries()) e = rng() % 9;
    for (auto& e : v.entries()) e = rng() % 9;
    if (u.is_zero() || v.is_zero()) continue;
    Matrix outer(f9, 4, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) outer(i, j) = f9->mul(u[i], v[j]);
    EXPECT_EQ(rank(outer), 1u);
  }
}

TEST(Rank, AgreesWithCountingOracle) {
  std::mt19937_64 rng(42);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto f = make_field(p, m);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
      Matrix a = random_matrix(f, r, c, rng);
      EXPECT_EQ(rank(a), matrix_rank_by_counting(a));
      // rank-nullity
      EXPECT_EQ(rank(a) + nullspace_basis(a).size(), c);
    }
  }
}

TEST(Nullspace, Examples) {
  auto f2 = make_field(2, 1);
  EXPECT_TRUE(nullspace_basis(Matrix::identity(f2, 3)).empty());
  EXPECT_EQ(nullspace_basis(Matrix(f2, 1, 3)).size(), 3u);

  const Matrix a = mat(f2, 2, 3, {1, 1, 0, 0, 1, 1});
  // Oracle: every x in F_2^3 with Ax = 0.
  std::vector<std::vector<Elem>> kernel;
  for_each_tuple(2, 3, [&](const std::vector<Elem>& x) {
    if (!x[0] && !x[1] && !x[2]) return;
    if (matvec(a, Vector(f2, x)).is_zero()) kernel.push_back(x);
  });
  ASSERT_EQ(kernel.size(), 1u);
  const auto basis = nullspace_basis(a);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], Vector(f2, kernel[0]));
}

TEST(Nullspace, VectorsAreInKernelAndIndependent) {
  std::mt19937_64 rng(3);
  auto f4 = make_field(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a = random_matrix(f4, 1 + rng() % 3, 2 + rng() % 4, rng);
    const auto basis = nullspace_basis(a);
    for (const auto& v : basis) EXPECT_TRUE(matvec(a, v).is_zero());
    EXPECT_EQ(testing::rank_by_counting(f4, basis, a.cols()), basis.size());
  }
}

TEST(SymmetricBasis, TrivialCases) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(symmetric_solution_basis(f2, {}, 2).size(), 3u);
  std::vector<Matrix> forms{mat(f2, 1, 1, {1})};
  EXPECT_TRUE(symmetric_solution_basis(f2, forms, 1).empty());
}

TEST(SymmetricBasis, MatchesEnumerationForAndNotCircuit) {
  auto f2 = make_field(2, 1);
  const auto c = parse_circuit("g1 = INPUT\ng2 = NOT g1\ng3 = AND g1 g2\nOUTPUT g3\n");
  const auto sys = circuit_to_quadratic(c, f2);
  ASSERT_EQ(sys.n_vars, 4u);

  // Oracle: all 2^10 symmetric X, keep those with sum_ij Q[i,j] X[i,j] = 0 for every form.
  std::size_t solutions = 0;
  for_each_tuple(2, 10, [&](const std::vector<Elem>& upper) {
    Matrix x(f2, 4, 4);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) x(i, j) = x(j, i) = upper[k++];
    bool ok = true;
    for (const auto& q : sys.forms) {
      unsigned s = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += q(i, j) * x(i, j);
      ok &= s % 2 == 0;
    }
    solutions += ok;
  });

  const auto basis = symmetric_solution_basis(f2, sys.forms, 4);
  EXPECT_EQ(std::size_t{1} << basis.size(), solutions);
  for (const auto& x : basis) {
    EXPECT_TRUE(x.is_symmetric());
    for (const auto& q : sys.forms) EXPECT_EQ(apply_quadratic_form(q, x), 0u);
  }
}

TEST(QuadraticForm, OuterProductMatchesEvaluation) {
  auto f3 = make_field(3, 1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix q = random_matrix(f3, 3, 3, rng);
    std::vector<Elem> x{static_cast<Elem>(rng() % 3), static_cast<Elem>(rng() % 3), static_cast<Elem>(rng() % 3)};
    Matrix xx(f3, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) xx(i, j) = f3->mul(x[i], x[j]);
    EXPECT_EQ(apply_quadratic_form(q, xx), evaluate_quadratic(q, x));
  }
}

TEST(Kron, Examples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(kron(Vector(f2, {1, 0}), Vector(f2, {1, 1})), Vector(f2, {1, 1, 0, 0}));
  EXPECT_EQ(kron(Matrix::identity(f2, 2), Matrix::identity(f2, 2)), Matrix::identity(f2, 4));
}

TEST(Kron, WeightIsMultiplicativeAndMatchesOuterProduct) {
  auto f9 = make_field(3, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Vector u(f9, 1 + rng() % 5), v(f9, 1 + rng() % 5);
    for (auto& e : u.entries()) e = rng() % 9;
    for (auto& e : v.entries()) e = rng() % 9;
    const Vector k = kron(u, v);
    EXPECT_EQ(weight(k), weight(u) * weight(v));
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) EXPECT_EQ(k[i * v.size() + j], f9->mul(u[i], v[j]));
  }
}

TEST(Kron, MixedProduct) {
  auto f3 = make_field(3, 1);
  std::mt19937_64 rng(9);
  Matrix a = random_matrix(f3, 2, 3, rng), b = random_matrix(f3, 3, 2, rng);
  Matrix c = random_matrix(f3, 3, 2, rng), d = random_matrix(f3, 2, 2, rng);
  EXPECT_EQ(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d)));
}

TEST(Linalg, DimensionAndFieldChecks) {
  auto f2 = make_field(2, 1);
  auto f3 = make_field(3, 1);
  EXPECT_THROW(matmul(Matrix(f2, 2, 3), Matrix(f2, 2, 3)), Error);
  EXPECT_THROW(matmul(Matrix(f2, 2, 2), Matrix(f3, 2, 2)), Error);
  EXPECT_THROW(kron(Vector(f2, 2), Vector(f3, 2)), Error);
}

}  // namespace
}  // namespace gapforge
