#include "rsconn/poly.hpp"

#include <algorithm>
#include <map>

#include "rsconn/errors.hpp"

namespace rsconn {

Poly::Poly(int t_order, std::vector<RingElem> coeffs) : t_order_(t_order), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.t_order() != t_order_) fail(ErrorKind::Structural, "polynomial coefficient with wrong t-order");
  trim();
}

Poly Poly::over_q(std::vector<Rational> coeffs) {
  std::vector<RingElem> cs;
  cs.reserve(coeffs.size());
  for (auto& c : coeffs) cs.emplace_back(1, c);
  return Poly(1, std::move(cs));
}

Poly Poly::constant(const RingElem& c) { return Poly(c.t_order(), {c}); }

Poly Poly::linear(const RingElem& root) {
  return Poly(root.t_order(), {-root, RingElem::one(root.t_order())});
}

Poly Poly::monomial(int t_order, int degree) {
  std::vector<RingElem> cs(static_cast<std::size_t>(degree + 1), RingElem::zero(t_order));
  cs.back() = RingElem::one(t_order);
  return Poly(t_order, std::move(cs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Poly::is_monic() const { return !is_zero() && leading() == RingElem::one(t_order_); }

RingElem Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return RingElem::zero(t_order_);
  return coeffs_[static_cast<std::size_t>(k)];
}

Poly Poly::residue() const { return t_layer(0); }

Poly Poly::t_layer(int k) const {
  std::vector<RingElem> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.emplace_back(1, c[k]);
  return Poly(1, std::move(cs));
}

Poly Poly::with_t_order(int t_order) const {
  std::vector<RingElem> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(c.with_t_order(t_order));
  return Poly(t_order, std::move(cs));
}

RingElem Poly::operator()(const RingElem& x) const {
  RingElem acc = RingElem::zero(t_order_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_order_ != t_order_) fail(ErrorKind::Structural, "polynomial t-order mismatch");
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), RingElem::zero(t_order_));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_order_ != b.t_order_) fail(ErrorKind::Structural, "polynomial t-order mismatch");
  if (a.is_zero() || b.is_zero()) return Poly(a.t_order_);
  std::vector<RingElem> cs(a.coeffs_.size() + b.coeffs_.size() - 1, RingElem::zero(a.t_order_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(a.t_order_, std::move(cs));
}

Poly operator*(Poly a, const RingElem& s) {
  for (auto& c : a.coeffs_) c = c * s;
  a.trim();
  return a;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) fail(ErrorKind::Structural, "polynomial division by zero");
  if (divisor.t_order_ != t_order_) fail(ErrorKind::Structural, "polynomial t-order mismatch");
  const RingElem lead_inv = divisor.leading().inverse();
  Poly rem(*this);
  const int dd = divisor.degree();
  if (rem.degree() < dd) return {Poly(t_order_), rem};
  std::vector<RingElem> quot(static_cast<std::size_t>(rem.degree() - dd + 1), RingElem::zero(t_order_));
  for (int k = rem.degree(); k >= dd; --k) {
    if (k > rem.degree()) continue;
    RingElem q = rem.coeff(k) * lead_inv;
    quot[static_cast<std::size_t>(k - dd)] = q;
    for (int i = 0; i <= dd; ++i) rem.coeffs_[static_cast<std::size_t>(k - dd + i)] -= q * divisor.coeffs_[static_cast<std::size_t>(i)];
    // The leading term cancels exactly; drop it even if nilpotent noise would remain.
    rem.coeffs_[static_cast<std::size_t>(k)] = RingElem::zero(t_order_);
    rem.trim();
  }
  return {Poly(t_order_, std::move(quot)), rem};
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const RingElem& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    if (k == 0) {
      term = compound ? "(" + cs + ")" : cs;
    } else {
      std::string mono = k == 1 ? "T" : "T^" + std::to_string(k);
      if (cs == "1") term = mono;
      else if (cs == "-1") term = "-" + mono;
      else term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

namespace {

Poly scaled_layer(const Poly& q_poly, int layer, int t_order) {
  std::vector<RingElem> cs;
  cs.reserve(q_poly.coeffs().size());
  for (const auto& c : q_poly.coeffs()) {
    RingElem e(t_order);
    e[layer] = c[0];
    cs.push_back(std::move(e));
  }
  return Poly(t_order, std::move(cs));
}

Poly product(const std::vector<Poly>& polys, int t_order, std::size_t skip = static_cast<std::size_t>(-1)) {
  Poly acc = Poly::constant(RingElem::one(t_order));
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (i != skip) acc = acc * polys[i];
  return acc;
}

void require_q(const Poly& p, const char* what) {
  if (p.t_order() != 1) fail(ErrorKind::Structural, std::string(what) + " must be a polynomial over Q");
}

// v_i with sum_i v_i * prod_{j != i} g_j = 1 over Q.
std::vector<Poly> residue_cofactors(const std::vector<Poly>& g) {
  std::vector<Poly> v;
  v.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Poly g_hat = product(g, 1, i);
    v.push_back(bezout_coprime(g[i], g_hat).second);
  }
  return v;
}

}  // namespace

std::pair<Poly, Poly> bezout_coprime(const Poly& g, const Poly& h) {
  require_q(g, "bezout input");
  require_q(h, "bezout input");
  if (g.is_zero() || h.is_zero()) fail(ErrorKind::NotCoprime, "zero polynomial has no Bezout identity");
  // Extended Euclid: r_prev = s_prev*g + w_prev*h.
  Poly r_prev = g, r = h;
  Poly s_prev = Poly::constant(RingElem::one(1)), s(1);
  Poly w_prev(1), w = Poly::constant(RingElem::one(1));
  while (!r.is_zero()) {
    auto [q, rem] = r_prev.divmod(r);
    r_prev = std::exchange(r, rem);
    s_prev = std::exchange(s, s_prev - q * s);
    w_prev = std::exchange(w, w_prev - q * w);
  }
  if (r_prev.degree() != 0)
    fail(ErrorKind::NotCoprime, "polynomials " + g.str() + " and " + h.str() + " share a factor");
  const RingElem inv = r_prev.leading().inverse();
  Poly u = s_prev * inv;
  u = h.degree() > 0 ? u % h : Poly(1);
  // v = (1 - u g) / h, exact.
  auto [v, vrem] = (Poly::constant(RingElem::one(1)) - u * g).divmod(h);
  if (!vrem.is_zero()) fail(ErrorKind::NotCoprime, "Bezout reconstruction failed");
  return {u, v};
}

std::vector<Poly> hensel_lift_factors(const Poly& p, const std::vector<Poly>& residue_factors) {
  const int m = p.t_order();
  if (!p.is_monic()) fail(ErrorKind::PreconditionFailed, "Hensel lifting needs a monic polynomial");
  if (residue_factors.empty()) fail(ErrorKind::BadResidueFactorization, "empty residue factorization");
  for (const auto& g : residue_factors) {
    require_q(g, "residue factor");
    if (!g.is_monic()) fail(ErrorKind::BadResidueFactorization, "residue factor " + g.str() + " is not monic");
  }
  if (product(residue_factors, 1) != p.residue())
    fail(ErrorKind::BadResidueFactorization, "residue factors do not multiply to " + p.residue().str());
  if (residue_factors.size() == 1) return {p};

  const std::vector<Poly> v = residue_cofactors(residue_factors);
  std::vector<Poly> lifted;
  lifted.reserve(residue_factors.size());
  for (const auto& g : residue_factors) lifted.push_back(g.with_t_order(m));

  for (int layer = 1; layer < m; ++layer) {
    Poly err = (p - product(lifted, m)).t_layer(layer);
    if (err.is_zero()) continue;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      Poly delta = (err * v[i]) % residue_factors[i];
      lifted[i] += scaled_layer(delta, layer, m);
    }
  }
  if (product(lifted, m) != p) fail(ErrorKind::BadResidueFactorization, "Hensel lift did not reproduce input");
  return lifted;
}

std::vector<Poly> lift_partial_fraction_cofactors(const std::vector<Poly>& factors) {
  if (factors.empty()) return {};
  const int m = factors.front().t_order();
  std::vector<Poly> residues;
  residues.reserve(factors.size());
  for (const auto& f : factors) residues.push_back(f.residue());
  const std::vector<Poly> v = residue_cofactors(residues);

  std::vector<Poly> hats;
  hats.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) hats.push_back(product(factors, m, i));

  std::vector<Poly> s;
  s.reserve(v.size());
  for (const auto& vi : v) s.push_back(vi.with_t_order(m));
  const Poly one = Poly::constant(RingElem::one(m));
  for (int layer = 1; layer < m; ++layer) {
    Poly total(m);
    for (std::size_t i = 0; i < s.size(); ++i) total += s[i] * hats[i];
    Poly err = (one - total).t_layer(layer);
    if (err.is_zero()) continue;
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] += scaled_layer((err * v[i]) % residues[i], layer, m);
  }
  return s;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::map<mpz_class, int> primes;
  mpz_class d = 2;
  const unsigned long trial_limit = 1000000;
  while (d <= trial_limit && d * d <= n) {
    while (n % d == 0) {
      ++primes[d];
      n /= d;
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) {
    if (d * d <= n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      fail(ErrorKind::Unsupported, "coefficient too large to factor for rational root search");
    ++primes[n];
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, exp] : primes) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int e = 1; e <= exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<RootMultiplicity> factor_over_rationals(const Poly& p) {
  require_q(p, "factor_over_rationals input");
  if (!p.is_monic()) fail(ErrorKind::PreconditionFailed, "factor_over_rationals needs a monic polynomial");
  std::map<Rational, int> found;
  Poly q = p;
  auto divide_out = [&](const Rational& root) {
    const Poly lin = Poly::linear(RingElem(1, root));
    while (q.degree() > 0) {
      auto [quot, rem] = q.divmod(lin);
      if (!rem.is_zero()) break;
      q = quot;
      ++found[root];
    }
  };
  divide_out(Rational(0));
  if (q.degree() > 0) {
    // Integer-scaled copy for the rational root theorem.
    mpz_class lcm = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c[0].denominator().get_mpz_t());
    const mpz_class c0 = mpq_class(q.coeff(0)[0].raw() * lcm).get_num();
    const mpz_class cd = mpq_class(q.leading()[0].raw() * lcm).get_num();
    const auto nums = positive_divisors(c0);
    const auto dens = positive_divisors(cd);
    for (const auto& b : dens) {
      for (const auto& a : nums) {
        for (int sgn : {1, -1}) {
          if (q.degree() == 0) break;
          Rational cand(mpq_class(mpz_class(a * sgn), b));
          if (q(RingElem(1, cand)).is_zero()) divide_out(cand);
        }
      }
    }
  }
  if (q.degree() > 0)
    fail(ErrorKind::UnsupportedSpectrum, "factor " + q.str() + " has no rational roots");
  std::vector<RootMultiplicity> out;
  for (const auto& [root, mult] : found) out.push_back({root, mult});
  return out;
}

Poly expand_roots(const std::vector<RootMultiplicity>& roots, int t_order) {
  Poly acc = Poly::constant(RingElem::one(t_order));
  for (const auto& [root, mult] : roots)
    for (int k = 0; k < mult; ++k) acc = acc * Poly::linear(RingElem(t_order, root));
  return acc;
}

}  // namespace rsconn
