// Copyright 2026 The steerlab Authors
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

#include "steerlab/core.hpp"

#include "gtest/gtest.h"

#include "steerlab/states.hpp"
#include "test_support.hpp"

#include <random>

using namespace steerlab;

namespace {

double rel_err(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST(core, symplectic_form_properties) {
  for (int n = 1; n <= 4; ++n) {
    const Matrix w = symplectic_form(n);
    EXPECT_LT((w + w.transpose()).norm(), 1e-15);
    EXPECT_LT((w * w + Matrix::Identity(2 * n, 2 * n)).norm(), 1e-15);
  }
  EXPECT_THROW(symplectic_form(0), UsageError);
}

TEST(core, symplectic_eigenvalues_vacuum) {
  for (int n = 1; n <= 5; ++n) {
    const Vector nu = symplectic_eigenvalues(Matrix::Identity(2 * n, 2 * n));
    ASSERT_EQ(nu.size(), n);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(nu(k), 1.0, 1e-14);
  }
}

TEST(core, symplectic_eigenvalues_single_mode_is_sqrt_det) {
  Matrix m(2, 2);
  m << 4, 0, 0, 0.25;
  EXPECT_NEAR(symplectic_eigenvalues(m)(0), 1.0, 1e-14);
  m << 3, 0.5, 0.5, 2;
  EXPECT_NEAR(symplectic_eigenvalues(m)(0), std::sqrt(5.75), 1e-13);
}

TEST(core, symplectic_eigenvalues_tmsv_pure) {
  for (double r : {0.1, 0.5, 1.3}) {
    const Vector nu = symplectic_eigenvalues(two_mode_squeezed(r).matrix());
    EXPECT_NEAR(nu(0), 1.0, 1e-10);
    EXPECT_NEAR(nu(1), 1.0, 1e-10);
  }
}

TEST(core, symplectic_eigenvalues_match_two_mode_closed_form) {
  const auto states = random_mixed(2, {.seed = 11, .count = 200, .r_max = 1.2}).take();
  for (const auto& s : states) {
    const auto [lo, hi] = oracle::two_mode_spectrum(s.matrix());
    const Vector nu = symplectic_eigenvalues(s.matrix());
    EXPECT_LT(rel_err(nu(0), lo), 1e-9);
    EXPECT_LT(rel_err(nu(1), hi), 1e-9);
  }
}

TEST(core, symplectic_eigenvalues_invariants_three_modes) {
  // prod nu = sqrt(det M) and sum nu^2 = -tr((Omega M)^2) / 2.
  const auto states = random_mixed(3, {.seed = 12, .count = 200, .r_max = 1.0}).take();
  for (const auto& s : states) {
    const Vector nu = symplectic_eigenvalues(s.matrix());
    const Matrix om = oracle::omega(3) * s.matrix();
    EXPECT_LT(rel_err(nu.prod(), std::sqrt(s.matrix().determinant())), 1e-9);
    EXPECT_LT(rel_err(nu.squaredNorm(), -0.5 * (om * om).trace()), 1e-9);
    for (int k = 0; k + 1 < nu.size(); ++k) EXPECT_LE(nu(k), nu(k + 1));
  }
}

TEST(core, symplectic_eigenvalues_rejects_bad_input) {
  Matrix m(2, 2);
  m << 1, 0.5, 0, 1;
  EXPECT_THROW(symplectic_eigenvalues(m), DomainError);
  m << -1, 0, 0, 1;
  EXPECT_THROW(symplectic_eigenvalues(m), DomainError);
  EXPECT_THROW(symplectic_eigenvalues(Matrix::Identity(3, 3)), UsageError);
}

TEST(core, symplectic_spectrum_invariant_under_symplectic) {
  std::mt19937_64 rng(5);
  const auto states = random_mixed(3, {.seed = 13, .count = 100}).take();
  for (const auto& s : states) {
    const Matrix sym = oracle::random_symplectic(3, rng);
    const Vector before = symplectic_eigenvalues(s.matrix());
    const Vector after = symplectic_eigenvalues(apply_symplectic(s, sym).matrix());
    for (int k = 0; k < 3; ++k) EXPECT_LT(rel_err(after(k), before(k)), 1e-9);
  }
}

TEST(core, apply_symplectic_identity_and_vacuum) {
  const auto s = random_mixed(2, {.seed = 3}).at(0);
  EXPECT_LT((apply_symplectic(s, Matrix::Identity(4, 4)).matrix() - s.matrix()).norm(), 1e-15);
  std::mt19937_64 rng(9);
  const Matrix sym = oracle::random_symplectic(2, rng);
  const CovarianceMatrix out = apply_symplectic(CovarianceMatrix::vacuum(2), sym);
  EXPECT_LT((out.matrix() - sym * sym.transpose()).norm(), 1e-12);
  EXPECT_TRUE(is_pure(out));
}

TEST(core, apply_symplectic_rejects_non_symplectic) {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  try {
    apply_symplectic(CovarianceMatrix::vacuum(1), bad);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("||S Omega S^T - Omega||"), std::string::npos);
  }
}

TEST(core, schur_complement_product_state) {
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) << 2, 0.3, 0.3, 1.5;
  m.bottomRightCorner(2, 2) << 3, -0.2, -0.2, 1;
  const CovarianceMatrix s(m);
  EXPECT_LT((schur_complement(s, {0}) - m.bottomRightCorner(2, 2)).norm(), 1e-15);
  EXPECT_LT((schur_complement(s, {1}) - m.topLeftCorner(2, 2)).norm(), 1e-15);
}

TEST(core, schur_complement_tmsv) {
  for (double r : {0.2, 0.7, 1.5}) {
    const Matrix sc = schur_complement(two_mode_squeezed(r), {0});
    // cosh2r - sinh^2 2r / cosh 2r = 1 / cosh 2r on both diagonal entries.
    EXPECT_NEAR(sc(0, 0), 1.0 / std::cosh(2 * r), 1e-12);
    EXPECT_NEAR(sc(1, 1), 1.0 / std::cosh(2 * r), 1e-12);
    EXPECT_NEAR(sc(0, 1), 0.0, 1e-12);
  }
}

TEST(core, schur_complement_determinant_factorization) {
  const auto states = random_mixed(4, {.seed = 14, .count = 100}).take();
  for (const auto& s : states) {
    const Matrix sc = schur_complement(s, {0, 2});
    const double det_removed = partial_trace(s, {0, 2}).matrix().determinant();
    EXPECT_LT(rel_err(sc.determinant() * det_removed, s.matrix().determinant()), 1e-9);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(sc).eigenvalues()(0), 0.0);
  }
}

TEST(core, schur_spectrum_product_matches_determinant_ratio) {
  const auto states = random_mixed(3, {.seed = 15, .count = 200}).take();
  for (const auto& s : states) {
    const Vector nu = symplectic_eigenvalues(schur_complement(s, {1}));
    const double ratio = s.matrix().determinant() / partial_trace(s, {1}).matrix().determinant();
    EXPECT_LT(rel_err(nu.prod(), std::sqrt(ratio)), 1e-9);
  }
}

TEST(core, schur_complement_usage_errors) {
  const auto s = CovarianceMatrix::vacuum(2);
  EXPECT_THROW(schur_complement(s, {}), UsageError);
  EXPECT_THROW(schur_complement(s, {0, 1}), UsageError);
  EXPECT_THROW(schur_complement(s, {2}), UsageError);
}

TEST(core, partial_trace_basics) {
  const auto s = random_mixed(3, {.seed = 16}).at(0);
  EXPECT_EQ(partial_trace(s, {0, 1, 2}).matrix(), s.matrix());
  EXPECT_THROW(partial_trace(s, {}), UsageError);
  EXPECT_THROW(partial_trace(s, {0, 0}), UsageError);
  const auto bc = partial_trace(s, {1, 2});
  EXPECT_EQ(bc.matrix(), s.matrix().bottomRightCorner(4, 4));
}

TEST(core, partial_trace_composes) {
  const auto s = random_mixed(4, {.seed = 17}).at(0);
  const auto once = partial_trace(s, {1, 3});
  const auto twice = partial_trace(partial_trace(s, {1, 2, 3}), {0, 2});
  EXPECT_EQ(once.matrix(), twice.matrix());
}

TEST(core, complementary_marginals_of_pure_state) {
  const auto states = random_pure(3, {.seed = 18, .count = 100}).take();
  for (const auto& s : states) {
    const double det_a = partial_trace(s, {0}).matrix().determinant();
    const double det_bc = partial_trace(s, {1, 2}).matrix().determinant();
    EXPECT_LT(rel_err(det_bc, det_a), 1e-9);
  }
}

TEST(core, log_det_values) {
  EXPECT_NEAR(log_det(CovarianceMatrix::vacuum(3)), 0.0, 1e-15);
  const CovarianceMatrix thermal(2.0 * Matrix::Identity(2, 2));
  EXPECT_NEAR(log_det(thermal), 2 * std::log(2.0), 1e-14);
  // Large invariants: Cholesky route stays accurate.
  const auto s = standard_form_pure({2.0, 1000.0, 1000.0});
  EXPECT_NEAR(log_det(s), 0.0, 1e-6);
}

TEST(core, conditional_log_det_product_state) {
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = 1.5 * Matrix::Identity(2, 2);
  m.bottomRightCorner(2, 2) << 2, 0.4, 0.4, 3;
  const CovarianceMatrix s(m);
  EXPECT_NEAR(conditional_log_det(s, {1}, {0}), std::log(m.bottomRightCorner(2, 2).determinant()), 1e-14);
  EXPECT_THROW(conditional_log_det(s, {0}, {0}), UsageError);
}

TEST(core, strong_subadditivity_of_log_det) {
  const auto states = random_mixed(3, {.seed = 19, .count = 500, .r_max = 1.5}).take();
  for (const auto& s : states) {
    const double joint = conditional_log_det(s, {1, 2}, {0});
    const double sum = conditional_log_det(s, {1}, {0}) + conditional_log_det(s, {2}, {0});
    EXPECT_LE(joint, sum + 1e-9);
  }
}

TEST(core, conditional_log_det_concavity) {
  const auto first = random_mixed(2, {.seed = 20, .count = 300}).take();
  const auto second = random_mixed(2, {.seed = 21, .count = 300}).take();
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(0, 1);
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double lambda = unit(rng);
    const CovarianceMatrix mix(lambda * first[i].matrix() + (1 - lambda) * second[i].matrix());
    const double lhs = conditional_log_det(mix, {1}, {0});
    const double rhs = lambda * conditional_log_det(first[i], {1}, {0}) +
                       (1 - lambda) * conditional_log_det(second[i], {1}, {0});
    EXPECT_GE(lhs, rhs - 1e-9);
  }
}

TEST(core, validity_and_purity) {
  EXPECT_TRUE(is_pure(CovarianceMatrix::vacuum(2)));
  const CovarianceMatrix thermal(2.0 * Matrix::Identity(2, 2));
  EXPECT_TRUE(is_valid_cm(thermal.matrix()).valid);
  EXPECT_FALSE(is_pure(thermal));

  const ValidityReport r = is_valid_cm(0.5 * Matrix::Identity(2, 2));
  EXPECT_FALSE(r.valid);
  EXPECT_NEAR(r.min_symplectic_eigenvalue, 0.5, 1e-14);
  EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-14);
  EXPECT_THROW(CovarianceMatrix(0.5 * Matrix::Identity(2, 2)), DomainError);

  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.1;
  const ValidityReport ra = is_valid_cm(asym);
  EXPECT_FALSE(ra.valid);
  EXPECT_NEAR(ra.symmetry_defect, 0.1, 1e-15);
}

TEST(core, mode_partition_validation) {
  EXPECT_THROW(ModePartition({{0}, {0, 1}}, 3), UsageError);
  EXPECT_THROW(ModePartition({{0}, {}}, 3), UsageError);
  EXPECT_THROW(ModePartition({{0}, {3}}, 3), UsageError);
  const ModePartition p({{2}, {0}}, 3);
  EXPECT_EQ(p.rest(0), ModeSet{0});
  EXPECT_EQ(ModePartition::single_modes(3).rest(1), (ModeSet{0, 2}));
}
