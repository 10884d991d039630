// Copyright 2026 The qnls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qnls/block_encoding.hpp"

using namespace qnls;

namespace {

Matrix random_matrix(Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(d, d);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

// Random encoding with α ∈ [1, 3] whose block is a contraction.
BlockEncoding random_encoding(Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(1.0, 3.0);
  Matrix m = random_matrix(d, rng);
  m /= 1.05 * spectral_norm(m);
  return BlockEncoding::from_block(m, a(rng), 0.0, 1.0, {});
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void expect_valid(const BlockEncoding& be) {
  EXPECT_LE(unitarity_defect(be.unitary()), 1e-10);
}

}  // namespace

TEST(Dilation, IsUnitaryWithBlock) {
  std::mt19937_64 rng(1);
  Matrix b = random_matrix(5, rng);
  b /= 1.2 * spectral_norm(b);
  Matrix u = unitary_dilation(b);
  EXPECT_LE(unitarity_defect(u), 1e-12);
  EXPECT_LE((u.topLeftCorner(5, 5) - b).norm(), 1e-15);
}

TEST(Sparse, IdentityAndSwap) {
  auto id = be_from_sparse(SparseMatrix::identity(2), 1);
  EXPECT_EQ(id.alpha(), 1.0);
  EXPECT_LE((extract_block(id) - Matrix::Identity(2, 2)).norm(), 1e-15);
  SparseMatrix x(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
  auto bx = be_from_sparse(x, 1);
  EXPECT_LE((bx.block() - x.to_dense()).norm(), 1e-15);
  EXPECT_EQ(bx.eps(), 0.0);
  EXPECT_GT(bx.ledger().term("sparse_access"), 0.0);
  EXPECT_EQ(bx.ledger().oracle_queries, 1u);
}

TEST(Sparse, RandomTwoSparse) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Entry> es;
  for (Index r = 0; r < 4; ++r) {
    es.push_back({r, r, u(rng)});
    es.push_back({r, (r + 1) % 4, u(rng)});
  }
  SparseMatrix a(4, 4, es);
  auto be = be_from_sparse(a, 2);
  EXPECT_EQ(be.alpha(), 2.0);
  EXPECT_LE((2.0 * be.block() - a.to_dense()).norm(), 1e-10);
  expect_valid(be);
}

TEST(Sparse, Errors) {
  EXPECT_THROW(be_from_sparse(SparseMatrix(2, 2, {{0, 0, 1.5}}), 1), RescaleRequired);
  EXPECT_THROW(be_from_sparse(SparseMatrix(2, 3, {{0, 0, 0.5}}), 1), InputError);
  EXPECT_THROW(be_from_sparse(SparseMatrix(2, 2, {{0, 0, 0.5}, {0, 1, 0.5}}), 1), InputError);
}

TEST(Vector, OuterProducts) {
  auto e1 = be_from_vector(Vector::Unit(3, 0));
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1;
  EXPECT_LE((e1.block() - d).norm(), 1e-15);
  Vector h = Vector::Constant(2, 1.0 / std::sqrt(2.0));
  EXPECT_LE((be_from_vector(h).block() - Matrix::Constant(2, 2, 0.5)).norm(), 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Vector x(4);
  for (Index i = 0; i < 4; ++i) x(i) = g(rng);
  x *= 0.6 / x.norm();
  auto be = be_from_vector(x);
  EXPECT_EQ(be.alpha(), 1.0);
  EXPECT_LE((be.block() - x * x.transpose()).norm(), 1e-12);
  expect_valid(be);
  EXPECT_THROW(be_from_vector(Vector::Ones(2)), InputError);
}

TEST(Product, IdentityAndHalf) {
  auto id = be_product(be_identity(3), be_identity(3));
  EXPECT_LE((extract_block(id) - Matrix::Identity(3, 3)).norm(), 1e-15);
  auto half = be_scalar(0.5, 2);
  auto q = be_product(half, half);
  EXPECT_LE((extract_block(q) - 0.25 * Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_THROW(be_product(be_identity(2), be_identity(3)), InputError);
}

TEST(Product, RandomPairAndAlpha) {
  std::mt19937_64 rng(4);
  auto l = random_encoding(4, rng);
  auto r = random_encoding(4, rng);
  auto p = be_product(l, r);
  EXPECT_DOUBLE_EQ(p.alpha(), l.alpha() * r.alpha());
  EXPECT_LE((extract_block(p) - extract_block(l) * extract_block(r)).norm(), 1e-10);
  ASSERT_TRUE(p.has_stored_unitary());
  expect_valid(p);
}

TEST(Product, ErrorPropagation) {
  auto l = BlockEncoding::from_block(0.5 * Matrix::Identity(2, 2), 2.0, 0.1, 1.0, {});
  auto r = BlockEncoding::from_block(0.5 * Matrix::Identity(2, 2), 3.0, 0.2, 1.0, {});
  EXPECT_NEAR(be_product(l, r).eps(), 2.0 * 0.2 + 3.0 * 0.1, 1e-15);
}

TEST(Tensor, CasesAndOracle) {
  std::mt19937_64 rng(5);
  auto a = random_encoding(2, rng);
  auto single = be_tensor({a});
  EXPECT_EQ(single.block(), a.block());
  Vector x = Vector::Unit(2, 1) * 0.8;
  auto ix = be_tensor({be_identity(2), be_from_vector(x)});
  EXPECT_LE((extract_block(ix) - kron(Matrix::Identity(2, 2), x * x.transpose())).norm(), 1e-14);
  auto b = random_encoding(2, rng);
  auto c = random_encoding(3, rng);
  auto t = be_tensor({a, b, c});
  EXPECT_DOUBLE_EQ(t.alpha(), a.alpha() * b.alpha() * c.alpha());
  Matrix expect = kron(kron(extract_block(a), extract_block(b)), extract_block(c));
  EXPECT_LE((extract_block(t) - expect).norm(), 1e-10);
  expect_valid(t);
}

TEST(Sum, CasesAndOracle) {
  std::mt19937_64 rng(6);
  auto m = random_encoding(3, rng);
  auto one = be_sum({m}, {1});
  EXPECT_LE((extract_block(one) - extract_block(m)).norm(), 1e-14);
  auto zero = be_sum({m, m}, {1, -1});
  EXPECT_LE(extract_block(zero).norm(), 1e-14);
  EXPECT_DOUBLE_EQ(zero.alpha(), 2.0 * m.alpha());
  std::vector<BlockEncoding> terms;
  for (int k = 0; k < 4; ++k) terms.push_back(random_encoding(3, rng));
  std::vector<int> signs{1, -1, -1, 1};
  auto s = be_sum(terms, signs);
  Matrix expect = Matrix::Zero(3, 3);
  double amax = 0.0;
  for (int k = 0; k < 4; ++k) {
    expect += signs[k] * extract_block(terms[k]);
    amax = std::max(amax, terms[k].alpha());
  }
  EXPECT_LE((extract_block(s) - expect).norm(), 1e-10);
  EXPECT_NEAR(s.alpha(), 4.0 * amax, 1e-12);
  EXPECT_GT(s.ledger().term("lcu"), 0.0);
  expect_valid(s);
}

TEST(Sum, UnequalAlphaWithoutRenormalization) {
  auto a = BlockEncoding::from_block(0.5 * Matrix::Identity(2, 2), 1.0, 0.0, 1.0, {});
  auto b = BlockEncoding::from_block(0.5 * Matrix::Identity(2, 2), 2.0, 0.0, 1.0, {});
  EXPECT_THROW(be_sum({a, b}, {1, 1}, false), CompositionError);
  EXPECT_THROW(be_sum({a, b}, {1, 2}), InputError);
}

TEST(Amplify, ContentInvariance) {
  auto be = BlockEncoding::from_block(0.1 * Matrix::Identity(2, 2), 1.0, 0.0, 1.0, {});
  auto amp = be_amplify(be, 5.0);
  EXPECT_DOUBLE_EQ(amp.alpha(), 0.2);
  EXPECT_LE((extract_block(amp) - 0.1 * Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_GT(amp.ledger().amplification_cost, 0.0);
  auto same = be_amplify(be, 1.0);
  EXPECT_EQ(same.alpha(), be.alpha());
  EXPECT_EQ(same.block(), be.block());
  EXPECT_THROW(be_amplify(be, 10.0), AmplificationOverflow);
  EXPECT_DOUBLE_EQ(max_amplification(be, 4.0), 4.0);
  EXPECT_NEAR(max_amplification(be, 100.0), (1.0 - 1e-6) / 0.1, 1e-9);
}

TEST(Transpose, InvolutionAndOracle) {
  std::mt19937_64 rng(7);
  auto be = random_encoding(4, rng);
  EXPECT_LE((extract_block(be_transpose(be_transpose(be))) - extract_block(be)).norm(), 1e-15);
  EXPECT_LE((extract_block(be_transpose(be)) - extract_block(be).transpose()).norm(), 1e-15);
  expect_valid(be_transpose(be));
  EXPECT_EQ(extract_block(be_identity(3)), Matrix::Identity(3, 3));
}

TEST(Relabel, RenormalizeAndScale) {
  std::mt19937_64 rng(8);
  auto be = random_encoding(3, rng);
  auto r = be_renormalize(be, 2.0 * be.alpha());
  EXPECT_LE((extract_block(r) - extract_block(be)).norm(), 1e-12);
  EXPECT_THROW(be_renormalize(be, 0.5 * be.alpha()), CompositionError);
  auto l = be_relabel(be, 3.0);
  EXPECT_LE((extract_block(l) - 3.0 * extract_block(be)).norm(), 1e-12);
  auto s = be_scale(be, -0.5);
  EXPECT_LE((extract_block(s) + 0.5 * extract_block(be)).norm(), 1e-12);
}

TEST(IsometrySandwich, MatchesDense) {
  std::mt19937_64 rng(9);
  auto be = random_encoding(4, rng);
  Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(4, rng)).householderQ();
  Matrix v_out = q.leftCols(2);
  Matrix v_in = q.rightCols(2);
  auto s = be_isometry_sandwich(be, v_out, v_in);
  EXPECT_LE((extract_block(s) - v_out.transpose() * extract_block(be) * v_in).norm(), 1e-12);
  expect_valid(s);
  EXPECT_GT(s.ledger().term("isometry"), 0.0);
}

TEST(UniformHouseholder, FirstColumnUniform) {
  Matrix h = uniform_householder(4);
  EXPECT_LE((h.transpose() * h - Matrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_LE((h.col(0) - Vector::Constant(4, 0.5)).norm(), 1e-15);
}

TEST(Compact, LargeCompositesKeepBlocks) {
  const Index cap = materialization_cap();
  set_materialization_cap(4);
  std::mt19937_64 rng(10);
  auto a = random_encoding(4, rng);
  auto b = random_encoding(4, rng);
  auto p = be_product(a, b);
  EXPECT_FALSE(p.has_stored_unitary());
  EXPECT_LE((extract_block(p) - extract_block(a) * extract_block(b)).norm(), 1e-10);
  EXPECT_LE(unitarity_defect(p.unitary()), 1e-10);
  set_materialization_cap(cap);
}

TEST(Ledger, MonotoneAndMerged) {
  auto a = be_from_sparse(SparseMatrix::identity(2), 1);
  auto b = be_from_vector(Vector::Unit(2, 0));
  auto p = be_product(a, b);
  auto s = be_sum({p, a}, {1, 1});
  for (const BlockEncoding* x : {&a, &b, &p}) {
    EXPECT_GE(s.ledger().oracle_queries, x->ledger().oracle_queries);
    EXPECT_GE(s.ledger().primitive_ops, x->ledger().primitive_ops);
  }
  EXPECT_EQ(p.ledger().term("sparse_access"), a.ledger().term("sparse_access"));
  EXPECT_EQ(p.ledger().term("state_prep"), b.ledger().term("state_prep"));
}

TEST(Ledger, MergeAssociativeCommutative) {
  CostLedger a, b, c;
  a.oracle_queries = 1;
  a.charge("x", 1.5);
  b.primitive_ops = 2;
  b.charge("y", 2.0);
  c.amplification_cost = 3.0;
  c.charge("x", 0.5);
  EXPECT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
  EXPECT_EQ(merge(a, b), merge(b, a));
  EXPECT_DOUBLE_EQ(merge(a, c).term("x"), 2.0);
  EXPECT_THROW(a.charge("z", -1.0), InputError);
}

TEST(Debug, IntendedCarriedAndVerified) {
  set_debug_checks(true);
  std::mt19937_64 rng(11);
  Matrix m = random_matrix(3, rng);
  m /= 2.0 * m.cwiseAbs().maxCoeff();
  auto a = be_from_sparse(SparseMatrix::from_dense(m), 3);
  auto p = be_product(be_transpose(a), a);
  ASSERT_TRUE(p.intended().has_value());
  EXPECT_LE((*p.intended() - m.transpose() * m).norm(), 1e-12);
  EXPECT_THROW(BlockEncoding::from_block(0.5 * Matrix::Identity(2, 2), 1.0, 0.0, 1.0, {},
                                         Matrix::Identity(2, 2)),
               InvariantViolation);
  set_debug_checks(false);
}

TEST(Golden, DumpOfSwapAndState) {
  Vector x(2);
  x << 0.6, 0.8;
  const std::string text = dump_text(be_from_sparse(SparseMatrix(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}}), 1)) +
                           dump_text(be_from_vector(x));
  std::ifstream in(std::string(QNLS_GOLDEN_DIR) + "/dump_swap_state.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(text, golden.str());
}

TEST(Golden, StateDumpMatchesAnalyticDilation) {
  // For unit x, B = xxᵀ is a projector so the dilation is [[P, I−P], [I−P, −P]].
  Vector x(2);
  x << 0.6, 0.8;
  Matrix p = x * x.transpose();
  Matrix q = Matrix::Identity(2, 2) - p;
  Matrix expect(4, 4);
  expect << p, q, q, -p;
  EXPECT_LE((be_from_vector(x).unitary() - expect).norm(), 1e-14);
}
