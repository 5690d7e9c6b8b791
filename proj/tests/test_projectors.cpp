#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "qzeno/models.hpp"
#include "qzeno/projectors.hpp"
#include "test_support.hpp"

using namespace qzeno;
using qztest::random_degenerate_observable;
using qztest::random_state_in;

TEST_CASE("projectors of a diagonal observable are exact") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(2, 2) = 1.0;
  ProjectorSet set = projectors_from_observable(a);

  REQUIRE(set.size() == 2);
  REQUIRE(set.eigenvalues[0] == 0.0);
  REQUIRE(set.eigenvalues[1] == 1.0);

  ComplexMatrix p0 = ComplexMatrix::Zero(3, 3);
  p0(1, 1) = 1.0;
  ComplexMatrix p1 = ComplexMatrix::Zero(3, 3);
  p1(0, 0) = 1.0;
  p1(2, 2) = 1.0;
  REQUIRE(frobenius_norm(set.projectors[0] - p0) == 0.0);
  REQUIRE(frobenius_norm(set.projectors[1] - p1) == 0.0);
  REQUIRE(set.members[0] == std::vector<int>{1});
  REQUIRE(set.members[1] == std::vector<int>{0, 2});
}

TEST_CASE("identity observable yields a single full projector") {
  ProjectorSet set = projectors_from_observable(ComplexMatrix::Identity(4, 4));
  REQUIRE(set.size() == 1);
  REQUIRE(frobenius_norm(set.projectors[0] - ComplexMatrix::Identity(4, 4)) ==
          0.0);
  REQUIRE(set.members[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("lattice region occupation splits 4 sites, 2 bosons into 3 blocks") {
  ModelSpec spec;
  spec.kind = ModelKind::BoseHubbard;
  spec.sites = 4;
  spec.total_particles = 2;
  Basis basis = model_basis(spec);
  ObservableSpec obs;
  obs.kind = ObservableKind::RegionOccupation;
  obs.weights = {0, 1, 1, 0};
  ProjectorSet set = projectors_from_observable(
      build_observable(obs, build_site_operators(basis)));

  REQUIRE(set.size() == 3);
  REQUIRE(set.eigenvalues[0] == 0.0);
  REQUIRE(set.eigenvalues[1] == 1.0);
  REQUIRE(set.eigenvalues[2] == 2.0);
  REQUIRE(set.members[0] == std::vector<int>{0, 3, 9});
  REQUIRE(set.members[1] == std::vector<int>{1, 2, 6, 8});
  REQUIRE(set.members[2] == std::vector<int>{4, 5, 7});

  ComplexMatrix sum = ComplexMatrix::Zero(10, 10);
  for (const ComplexMatrix& p : set.projectors) sum += p;
  REQUIRE(frobenius_norm(sum - ComplexMatrix::Identity(10, 10)) == 0.0);
}

TEST_CASE("generic observables produce orthogonal idempotent projectors") {
  std::mt19937_64 gen(515);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 3 + (int)(gen() % 10);
    ComplexMatrix a = random_degenerate_observable(d, gen);
    ProjectorSet set = projectors_from_observable(a);

    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    ComplexMatrix recon = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < set.size(); ++j) {
      const ComplexMatrix& p = set.projectors[j];
      REQUIRE(frobenius_norm(p * p - p) < 1e-10);
      REQUIRE(frobenius_norm(p - dagger(p)) < 1e-10);
      REQUIRE(set.members[j].empty());
      for (int k = 0; k < j; ++k)
        REQUIRE(frobenius_norm(set.projectors[j] * set.projectors[k]) <
                1e-10);
      sum += p;
      recon += set.eigenvalues[(std::size_t)j] * p;
    }
    REQUIRE(frobenius_norm(sum - ComplexMatrix::Identity(d, d)) < 1e-10);
    REQUIRE(frobenius_norm(recon - a) < 1e-9 * std::max(1.0, operator_norm(a)));
    for (int j = 0; j + 1 < set.size(); ++j)
      REQUIRE(set.eigenvalues[(std::size_t)j] <
              set.eigenvalues[(std::size_t)j + 1]);
  }
}

TEST_CASE("near-degenerate eigenvalues merge into one cluster") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(1, 1) = 1e-12;
  a(2, 2) = 1.0;
  ProjectorSet set = projectors_from_observable(a);
  REQUIRE(set.size() == 2);
  REQUIRE(set.members[0] == std::vector<int>{0, 1});

  // a forced zero tolerance keeps them apart
  ProjectorSet strict = projectors_from_observable(a, 0.0);
  REQUIRE(strict.size() == 3);
}

TEST_CASE("projectors_from_observable rejects non-Hermitian input") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = Complex(0.0, 1.0);
  a(1, 0) = Complex(0.0, 1.0);  // anti-Hermitian off-diagonal
  REQUIRE_THROWS_AS(projectors_from_observable(a), NotHermitian);
}

TEST_CASE("subspace_of finds the supporting block") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(2, 2) = 1.0;
  ProjectorSet set = projectors_from_observable(a);

  StateVector in_block = StateVector::Zero(3);
  in_block(0) = 1.0 / std::sqrt(2.0);
  in_block(2) = -1.0 / std::sqrt(2.0);
  REQUIRE(set.subspace_of(in_block) == 1);

  StateVector middle = StateVector::Zero(3);
  middle(1) = 1.0;
  REQUIRE(set.subspace_of(middle) == 0);

  StateVector straddle = StateVector::Zero(3);
  straddle(0) = std::sqrt(0.5);
  straddle(1) = std::sqrt(0.5);
  REQUIRE(set.subspace_of(straddle) == -1);

  StateVector tiny_leak = in_block + 1e-10 * middle;
  REQUIRE(set.subspace_of(tiny_leak) == 1);

  REQUIRE(set.subspace_of(StateVector::Zero(3)) == -1);
}

TEST_CASE("subspace_of respects randomized block splits") {
  std::mt19937_64 gen(626);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 4 + (int)(gen() % 8);
    ComplexMatrix a = random_degenerate_observable(d, gen);
    ProjectorSet set = projectors_from_observable(a);
    for (int j = 0; j < set.size(); ++j) {
      StateVector psi = random_state_in(set.projectors[j], gen);
      REQUIRE(set.subspace_of(psi) == j);
    }
  }
}
