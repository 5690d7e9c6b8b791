#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qzeno/basis.hpp"
#include "qzeno/site_ops.hpp"
#include "test_support.hpp"

using namespace qzeno;

TEST_CASE("fock_basis enumerates 4 sites, 2 bosons in descending order") {
  Basis b = fock_basis(4, 2);
  REQUIRE(b.dim() == 10);
  std::vector<std::string> expect = {
      "2,0,0,0", "1,1,0,0", "1,0,1,0", "1,0,0,1", "0,2,0,0",
      "0,1,1,0", "0,1,0,1", "0,0,2,0", "0,0,1,1", "0,0,0,2"};
  for (int i = 0; i < 10; ++i)
    REQUIRE(b.label_string(i) == expect[static_cast<std::size_t>(i)]);
  REQUIRE(b.index_of({1, 1, 0, 0}) == 1);
  REQUIRE(b.index_of({0, 0, 1, 1}) == 8);
  REQUIRE(b.index_of({3, 0, 0, 0}) == -1);
}

TEST_CASE("fock_basis honours an occupancy constraint") {
  auto one_in_middle = [](const BasisLabel& l) { return l[1] + l[2] == 1; };
  Basis b = fock_basis(4, 2, one_in_middle);
  REQUIRE(b.dim() == 4);
  REQUIRE(b.label_string(0) == "1,1,0,0");
  REQUIRE(b.label_string(1) == "1,0,1,0");
  REQUIRE(b.label_string(2) == "0,1,0,1");
  REQUIRE(b.label_string(3) == "0,0,1,1");
}

TEST_CASE("fock_basis single site and empty cases") {
  Basis single = fock_basis(1, 0);
  REQUIRE(single.dim() == 1);
  REQUIRE(single.label_string(0) == "0");

  auto impossible = [](const BasisLabel&) { return false; };
  REQUIRE_THROWS_AS(fock_basis(2, 1, impossible), EmptyBasis);
}

TEST_CASE("spin_chain_basis dimension, ordering, and cap") {
  Basis b = spin_chain_basis(3);
  REQUIRE(b.dim() == 8);
  REQUIRE(b.label_string(0) == "uuu");
  REQUIRE(b.label_string(7) == "ddd");
  REQUIRE(b.parse_label("udu") >= 0);
  REQUIRE_THROWS_AS(spin_chain_basis(13), TooLarge);
}

TEST_CASE("spin1_basis labels") {
  Basis b = spin1_basis();
  REQUIRE(b.dim() == 3);
  REQUIRE(b.label_string(0) == "-1");
  REQUIRE(b.label_string(1) == "0");
  REQUIRE(b.label_string(2) == "+1");
}

TEST_CASE("parse_label resolves label strings to indices") {
  Basis spins = spin_chain_basis(4);
  REQUIRE(spins.parse_label("uudd") == spins.index_of({1, 1, 0, 0}));
  REQUIRE(spins.parse_label("UDUD") == spins.index_of({1, 0, 1, 0}));
  REQUIRE(spins.parse_label("xyzw") == -1);
  REQUIRE(spins.parse_label("ud") == -1);

  Basis fock = fock_basis(4, 2);
  for (int i = 0; i < fock.dim(); ++i)
    REQUIRE(fock.parse_label(fock.label_string(i)) == i);
  REQUIRE(fock.parse_label("1,1,banana,0") == -1);

  Basis spin1 = spin1_basis();
  REQUIRE(spin1.parse_label("-1") == 0);
  REQUIRE(spin1.parse_label("0") == 1);
  REQUIRE(spin1.parse_label("+1") == 2);
  REQUIRE(spin1.parse_label("1") == 2);
  REQUIRE(spin1.parse_label("2") == -1);
}

TEST_CASE("number operators sum to N times the identity") {
  Basis b = fock_basis(3, 2);
  SiteOperatorSet ops = build_site_operators(b);
  ComplexMatrix total = ComplexMatrix::Zero(b.dim(), b.dim());
  for (int s = 0; s < 3; ++s) total += ops.number(s);
  REQUIRE(frobenius_norm(total - 2.0 * ComplexMatrix::Identity(
                                          b.dim(), b.dim())) < 1e-14);
}

TEST_CASE("hop carries bosonic amplitudes") {
  Basis b = fock_basis(2, 2);  // labels: 2,0 / 1,1 / 0,2
  SiteOperatorSet ops = build_site_operators(b);
  ComplexMatrix hop01 = ops.hop(0, 1);  // moves a boson from site 1 to site 0
  REQUIRE(std::abs(hop01(0, 1) - Complex(std::sqrt(2.0), 0.0)) < 1e-14);
  REQUIRE(std::abs(hop01(1, 2) - Complex(std::sqrt(2.0), 0.0)) < 1e-14);
  REQUIRE(frobenius_norm(hop01 - dagger(ops.hop(1, 0))) < 1e-14);
  REQUIRE(frobenius_norm(ops.hop(0, 0) - ops.number(0)) < 1e-14);
}

TEST_CASE("hop out of a constrained basis gives a zero column") {
  auto one_in_middle = [](const BasisLabel& l) { return l[1] + l[2] == 1; };
  Basis b = fock_basis(4, 2, one_in_middle);
  SiteOperatorSet ops = build_site_operators(b);
  // moving the site-2 boson of |1,1,0,0> to site 1 leaves the constraint
  ComplexMatrix m = ops.hop(0, 1);
  REQUIRE(m.col(0).norm() == 0.0);
}

TEST_CASE("rectangular ladder operators satisfy the commutator") {
  Basis two = fock_basis(3, 2);
  Basis one = fock_basis(3, 1);
  Basis three = fock_basis(3, 3);
  for (int s = 0; s < 3; ++s) {
    ComplexMatrix a = boson_annihilation(two, one, s);
    ComplexMatrix adag = boson_creation(two, three, s);
    ComplexMatrix a_down = boson_annihilation(three, two, s);
    ComplexMatrix c_up = boson_creation(one, two, s);
    ComplexMatrix comm = a_down * adag - c_up * a;
    REQUIRE(frobenius_norm(comm - ComplexMatrix::Identity(
                                      two.dim(), two.dim())) < 1e-13);
  }
  REQUIRE_THROWS_AS(boson_annihilation(two, three, 0), Mismatch);
}

TEST_CASE("spin ladder operators on a 2-site chain") {
  Basis b = spin_chain_basis(2);  // uu, ud, du, dd
  SiteOperatorSet ops = build_site_operators(b);

  ComplexMatrix sp1sm2 = ops.spin_plus(0) * ops.spin_minus(1);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(1, 2) = 1.0;  // S+_1 S-_2 |du> = |ud>
  REQUIRE(frobenius_norm(sp1sm2 - expect) < 1e-14);

  REQUIRE(frobenius_norm(dagger(ops.spin_plus(0)) - ops.spin_minus(0)) <
          1e-14);

  ComplexMatrix sz_total = ops.spin_z(0) + ops.spin_z(1);
  REQUIRE(std::abs(sz_total(0, 0) - Complex(1.0, 0.0)) < 1e-14);
  REQUIRE(std::abs(sz_total(3, 3) - Complex(-1.0, 0.0)) < 1e-14);
  REQUIRE(std::abs(sz_total(1, 1)) < 1e-14);
}

TEST_CASE("spin exchange conserves total magnetization") {
  Basis b = spin_chain_basis(4);
  SiteOperatorSet ops = build_site_operators(b);
  ComplexMatrix exch = ops.spin_plus(1) * ops.spin_minus(2) +
                       ops.spin_plus(2) * ops.spin_minus(1);
  ComplexMatrix mz = ComplexMatrix::Zero(b.dim(), b.dim());
  for (int s = 0; s < 4; ++s) mz += ops.spin_z(s);
  REQUIRE(frobenius_norm(exch * mz - mz * exch) < 1e-13);
}

TEST_CASE("spin-1 single-site operators") {
  Basis b = spin1_basis();
  SiteOperatorSet ops = build_site_operators(b);
  double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix sx = ops.spin1_sx();
  REQUIRE(std::abs(sx(0, 1) - Complex(s, 0.0)) < 1e-15);
  REQUIRE(std::abs(sx(1, 0) - Complex(s, 0.0)) < 1e-15);
  REQUIRE(std::abs(sx(1, 2) - Complex(s, 0.0)) < 1e-15);
  REQUIRE(std::abs(sx(2, 1) - Complex(s, 0.0)) < 1e-15);
  REQUIRE(std::abs(sx(0, 2)) == 0.0);

  ComplexMatrix sz = ops.spin1_sz();
  REQUIRE(std::abs(sz(0, 0) - Complex(-1.0, 0.0)) < 1e-15);
  REQUIRE(std::abs(sz(1, 1)) == 0.0);
  REQUIRE(std::abs(sz(2, 2) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("operator sets reject mismatched basis kinds") {
  Basis fock = fock_basis(2, 1);
  SiteOperatorSet ops = build_site_operators(fock);
  REQUIRE_THROWS_AS(ops.spin_plus(0), Unsupported);
  REQUIRE_THROWS_AS(ops.spin1_sx(), Unsupported);
  REQUIRE_THROWS_AS(ops.number(5), ConfigError);

  Basis generic(BasisKind::Generic, 1, -1, {{0}, {1}});
  REQUIRE_THROWS_AS(build_site_operators(generic), Unsupported);
}
