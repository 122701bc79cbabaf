#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rsconn/algorithms.hpp"

namespace rsconn {

/// Seeded generator whose output is identical on every platform (no std
/// distributions, which are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }
  /// Numerator in [-bound, bound], denominator in [1, max_den].
  Rational rational(int bound, int max_den);
  RingElem ring_elem(int t_order, int bound, int max_den);
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Exponent pool inside [0, 1).
const std::vector<Rational>& window_pool();
/// Exponent pool spanning -5/2 .. 7/3, for shearing workloads.
const std::vector<Rational>& shear_pool();

/// Unimodular Q-matrix built from elementary operations, with its inverse.
std::pair<QMatrix, QMatrix> random_unimodular(Rng& rng, int n);

/// Matrix over R whose residue has eigenvalues drawn from `pool`
/// (conjugated triangular matrix plus a random t-perturbation).
RMatrix random_split_matrix(Rng& rng, int n, int m, const std::vector<Rational>& pool);

/// Exact logarithmic connection A0 + A1 x + ... + A_degree x^degree with the residue
/// spectrum drawn from `pool`.
Connection random_log_connection(Rng& rng, int n, int m, const std::vector<Rational>& pool, int degree);

struct TwistedInstance {
  Connection conn;
  EndObject hidden;
  /// conn = gauge_apply(eul(hidden), twist), read to precision window.
  Gauge twist;
  int shear_depth = 0;
};

/// Euler connection of a random EndObject with spectrum in [0, 1), twisted by up to
/// two unit shears and a few elementary polynomial gauges, windowed so that
/// certificates through x^N remain reachable after
/// shearing back (each shear costs one order, the inverse check two more).
TwistedInstance gen_twisted(std::uint64_t seed, int n, int m, int N);

struct LatticeTwist {
  Connection conn;
  Connection model;
  Gauge twist;
};

/// Exact logarithmic connection over Q twisted by diag(x^-k_i) and a constant
/// unimodular change of basis (so it usually has poles).
LatticeTwist gen_lattice_twist(std::uint64_t seed, int n);

}  // namespace rsconn
