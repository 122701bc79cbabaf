#include "rsconn/generators.hpp"

namespace rsconn {

int Rng::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Rational Rng::rational(int bound, int max_den) {
  const int num = uniform(-bound, bound);
  return Rational(num, uniform(1, max_den));
}

RingElem Rng::ring_elem(int t_order, int bound, int max_den) {
  std::vector<Rational> cs;
  for (int i = 0; i < t_order; ++i) cs.push_back(rational(bound, max_den));
  return RingElem(t_order, std::move(cs));
}

const std::vector<Rational>& window_pool() {
  static const std::vector<Rational> pool{Rational(0),    Rational(1, 2), Rational(1, 3),
                                          Rational(2, 3), Rational(1, 4), Rational(3, 4)};
  return pool;
}

const std::vector<Rational>& shear_pool() {
  static const std::vector<Rational> pool{Rational(-5, 2), Rational(-2),    Rational(-3, 2), Rational(-1),
                                          Rational(-1, 2), Rational(0),     Rational(1, 3),  Rational(1, 2),
                                          Rational(1),     Rational(4, 3),  Rational(3, 2),  Rational(2),
                                          Rational(7, 3)};
  return pool;
}

std::pair<QMatrix, QMatrix> random_unimodular(Rng& rng, int n) {
  QMatrix q = identity_q(n), q_inv = identity_q(n);
  if (n == 1) return {q, q_inv};
  const int ops = rng.uniform(1, 2 * n);
  for (int k = 0; k < ops; ++k) {
    const int i = rng.uniform(0, n - 1);
    int j = rng.uniform(0, n - 2);
    if (j >= i) ++j;
    const Rational c(rng.uniform(-2, 2));
    // q <- q (I + c E_ij), q_inv <- (I - c E_ij) q_inv
    for (int r = 0; r < n; ++r) q(r, j) += c * q(r, i);
    for (int col = 0; col < n; ++col) q_inv(i, col) -= c * q_inv(j, col);
  }
  return {q, q_inv};
}

RMatrix random_split_matrix(Rng& rng, int n, int m, const std::vector<Rational>& pool) {
  QMatrix u(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    u(i, i) = rng.pick(pool);
    for (int j = i + 1; j < n; ++j)
      if (rng.coin()) u(i, j) = rng.rational(2, 2);
  }
  auto [q, q_inv] = random_unimodular(rng, n);
  RMatrix a = embed(q * u * q_inv, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int s = 1; s < m; ++s)
        if (rng.coin()) a(i, j)[s] = rng.rational(2, 3);
  return a;
}

Connection random_log_connection(Rng& rng, int n, int m, const std::vector<Rational>& pool, int degree) {
  const RMatrix a0 = random_split_matrix(rng, n, m, pool);
  SeriesMatrix a = constant_series(a0);
  const RingElem zero = RingElem::zero(m);
  for (int k = 1; k <= degree; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (rng.uniform(0, 2) == 0) continue;
        a(i, j) += LaurentSeries::monomial(rng.ring_elem(m, 2, 2), k);
      }
  return Connection(Flavor::Logarithmic, std::move(a));
}

namespace {

Gauge elementary_gauge(int n, int m, int i, int j, const RingElem& c, int power) {
  SeriesMatrix s = identity_series(n, m), s_inv = identity_series(n, m);
  s(i, j) = LaurentSeries::monomial(c, power);
  s_inv(i, j) = LaurentSeries::monomial(-c, power);
  return Gauge{std::move(s), std::move(s_inv)};
}

}  // namespace

TwistedInstance gen_twisted(std::uint64_t seed, int n, int m, int N) {
  Rng rng(seed);
  const EndObject hidden{random_split_matrix(rng, n, m, window_pool())};
  Connection conn = eul_algebraic(hidden);
  Gauge twist = Gauge::identity(n, m);

  const int depth = rng.uniform(0, 2);
  for (int k = 0; k < depth; ++k) {
    const auto blocks = jordan_decomposition_over_R(x_layer(conn.matrix(), 0));
    const JordanBlock& b = rng.pick(blocks);
    const Gauge g = shear_gauge(b.projector, rng.coin() ? 1 : -1);
    conn = gauge_apply(conn, g);
    twist = compose(twist, g);
  }
  if (n > 1) {
    const int ops = rng.uniform(1, 3);
    for (int k = 0; k < ops; ++k) {
      const int i = rng.uniform(0, n - 1);
      int j = rng.uniform(0, n - 2);
      if (j >= i) ++j;
      RingElem c = rng.ring_elem(m, 2, 2);
      if (c.is_zero()) c = RingElem::one(m);
      const Gauge g = elementary_gauge(n, m, i, j, c, rng.uniform(0, 2));
      conn = gauge_apply(conn, g);
      twist = compose(twist, g);
    }
  }
  Connection windowed = restrict(conn, N + 3 * depth);
  return TwistedInstance{std::move(windowed), hidden, std::move(twist), depth};
}

LatticeTwist gen_lattice_twist(std::uint64_t seed, int n) {
  Rng rng(seed);
  Connection model = random_log_connection(rng, n, 1, shear_pool(), 2);
  SeriesMatrix d = identity_series(n, 1), d_inv = identity_series(n, 1);
  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform(0, 2);
    d(i, i) = LaurentSeries::monomial(RingElem::one(1), -k);
    d_inv(i, i) = LaurentSeries::monomial(RingElem::one(1), k);
  }
  auto [q, q_inv] = random_unimodular(rng, n);
  const Gauge twist = compose(Gauge{std::move(d), std::move(d_inv)},
                              Gauge{constant_series(embed(q, 1)), constant_series(embed(q_inv, 1))});
  Connection conn = gauge_apply(model, twist);
  return LatticeTwist{std::move(conn), std::move(model), twist};
}

}  // namespace rsconn
