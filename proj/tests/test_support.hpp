#pragma once

// Hand-written fixtures and float-arithmetic oracles shared by the test
// binaries. Everything here is independent of the exact-arithmetic paths it
// is used to check: matrices are written out literally and the oracle
// evaluates sums numerically through the complex embedding.

#include <cmath>
#include <complex>

#include "modkit/cyclotomic.hpp"
#include "modkit/modular_data.hpp"

namespace testsup {

using modkit::Cyc;
using modkit::CycMatrix;
using modkit::CycVector;
using modkit::Int;
using modkit::RawModularData;

inline RawModularData rank1_raw() {
  RawModularData raw;
  raw.rank = 1;
  raw.conductor = 1;
  raw.s = CycMatrix(1, 1);
  raw.s(0, 0) = Cyc(1);
  raw.theta = CycVector(1);
  raw.theta(0) = Cyc(1);
  raw.name = "Trivial";
  return raw;
}

inline RawModularData semion_raw(bool anti = false) {
  RawModularData raw;
  raw.rank = 2;
  raw.conductor = 4;
  raw.s = CycMatrix(2, 2);
  raw.s << Cyc(1), Cyc(1), Cyc(1), Cyc(-1);
  raw.theta = CycVector(2);
  raw.theta(0) = Cyc(1);
  raw.theta(1) = Cyc::zeta(4, anti ? 3 : 1);
  raw.name = anti ? "AntiSemion" : "Semion";
  return raw;
}

inline RawModularData ising_raw() {
  RawModularData raw;
  raw.rank = 3;
  raw.conductor = 16;
  Cyc rt2 = Cyc::zeta(16, 2) + Cyc::zeta(16, 14);
  raw.s = CycMatrix(3, 3);
  raw.s << Cyc(1), Cyc(1), rt2, Cyc(1), Cyc(1), -rt2, rt2, -rt2, Cyc(0);
  raw.theta = CycVector(3);
  raw.theta(0) = Cyc(1);
  raw.theta(1) = Cyc(-1);
  raw.theta(2) = Cyc::zeta(16);
  raw.labels = {"1", "f", "s"};
  raw.name = "Ising";
  return raw;
}

inline RawModularData toric_raw() {
  RawModularData raw;
  raw.rank = 4;
  raw.conductor = 2;
  raw.s = CycMatrix(4, 4);
  raw.s << Cyc(1), Cyc(1), Cyc(1), Cyc(1),
           Cyc(1), Cyc(1), Cyc(-1), Cyc(-1),
           Cyc(1), Cyc(-1), Cyc(1), Cyc(-1),
           Cyc(1), Cyc(-1), Cyc(-1), Cyc(1);
  raw.theta = CycVector(4);
  raw.theta(0) = Cyc(1);
  raw.theta(1) = Cyc(1);
  raw.theta(2) = Cyc(1);
  raw.theta(3) = Cyc(-1);
  raw.labels = {"1", "e", "m", "em"};
  raw.name = "ToricCode";
  return raw;
}

// cyclic metric group data written out directly: s_{xy} = zeta_n^(2axy),
// theta_x = zeta_n^(ax^2) for odd n
inline RawModularData odd_cyclic_raw(int n, Int a = 1) {
  RawModularData raw;
  raw.rank = n;
  raw.conductor = n;
  raw.s = CycMatrix(n, n);
  raw.theta = CycVector(n);
  for (int x = 0; x < n; ++x) {
    raw.theta(x) = Cyc::zeta(n, a * x * x % n);
    for (int y = 0; y < n; ++y) raw.s(x, y) = Cyc::zeta(n, 2 * a * x * y % n);
  }
  raw.name = "Z" + std::to_string(n);
  return raw;
}

// independent fusion-coefficient oracle: Verlinde sum evaluated in complex
// floats through the embedding, rounded to the nearest integer
inline Int verlinde_numeric(const CycMatrix& s, int i, int j, int k) {
  const Eigen::MatrixXcd es = modkit::embed(s);
  const int n = static_cast<int>(es.rows());
  std::complex<double> d2 = 0;
  for (int a = 0; a < n; ++a) d2 += es(0, a) * es(0, a);
  std::complex<double> acc = 0;
  for (int a = 0; a < n; ++a)
    acc += es(i, a) * es(j, a) * std::conj(es(k, a)) / es(0, a);
  acc /= d2;
  if (std::abs(acc.imag()) > 1e-6) return -999999;  // clearly not an integer
  return std::llround(acc.real());
}

}  // namespace testsup
