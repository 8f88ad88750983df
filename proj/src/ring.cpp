#include "lielat/ring.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lielat {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  std::uint64_t s = a + b;
  if (s >= mod || s < a) s -= mod;
  return s % mod;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return a >= b ? (a - b) % mod : mod - ((b - a) % mod);
}

std::uint64_t reduce_ll(long long v, std::uint64_t mod) {
  long long r = v % static_cast<long long>(mod);
  if (r < 0) r += static_cast<long long>(mod);
  return static_cast<std::uint64_t>(r);
}

int vp_u64(std::uint64_t a, std::uint64_t p, int cap) {
  int v = 0;
  while (v < cap && a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// ---- F_p[x] helpers for the irreducibility check --------------------

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, constant first

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& g, std::uint64_t p) {
  // g monic
  while (a.size() >= g.size()) {
    std::uint64_t lead = a.back();
    size_t shift = a.size() - g.size();
    if (lead != 0)
      for (size_t i = 0; i < g.size(); ++i)
        a[shift + i] = submod(a[shift + i], mulmod(lead, g[i], p), p);
    a.pop_back();
  }
  return poly_trim(std::move(a));
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
  return poly_mod(std::move(c), g, p);
}

// x^(p^k) mod g
Poly poly_frobenius_power(const Poly& g, std::uint64_t p, int k) {
  Poly r = {0, 1};  // x
  for (int i = 0; i < k; ++i) {
    // raise to the p-th power by square-and-multiply on the exponent p
    Poly base = r;
    Poly acc = {1};
    std::uint64_t exp = p;
    while (exp) {
      if (exp & 1) acc = poly_mulmod(acc, base, g, p);
      base = poly_mulmod(base, base, g, p);
      exp >>= 1;
    }
    r = std::move(acc);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    // make b monic
    std::uint64_t lead = b.back();
    if (lead != 1) {
      // inverse of lead mod p via Fermat
      std::uint64_t inv = 1, base = lead, e = p - 2;
      while (e) {
        if (e & 1) inv = mulmod(inv, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
      }
      for (auto& c : b) c = mulmod(c, inv, p);
    }
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool poly_irreducible_mod_p(const std::vector<long long>& coeffs,
                            std::uint64_t p) {
  int f = static_cast<int>(coeffs.size()) - 1;
  Poly g(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) g[i] = reduce_ll(coeffs[i], p);
  if (g.back() != 1) return false;  // must stay monic mod p
  // x^(p^f) == x mod g, and gcd(x^(p^(f/l)) - x, g) = 1 for primes l | f
  Poly xpf = poly_frobenius_power(g, p, f);
  Poly x = {0, 1};
  Poly diff = xpf;
  diff.resize(std::max(diff.size(), x.size()), 0);
  for (size_t i = 0; i < x.size(); ++i) diff[i] = submod(diff[i], x[i], p);
  if (!poly_trim(diff).empty()) return false;
  for (int l = 2; l <= f; ++l) {
    if (f % l != 0 || !is_prime_u64(static_cast<std::uint64_t>(l))) continue;
    Poly h = poly_frobenius_power(g, p, f / l);
    h.resize(std::max(h.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) h[i] = submod(h[i], x[i], p);
    Poly d = poly_gcd(g, poly_trim(std::move(h)), p);
    if (d.size() > 1) return false;
  }
  return true;
}

}  // namespace

// ---- construction ----------------------------------------------------

Ring RingSpec::make(std::uint64_t p, int e, int f, int m,
                    std::vector<long long> defining_data) {
  if (p == 2)
    throw std::invalid_argument(
        "residue characteristic 2 is not supported (all statements in scope "
        "require it to be odd)");
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (e < 1 || f < 1 || m < 1)
    throw std::invalid_argument("e, f, m must all be >= 1");
  if (e > 1 && f > 1)
    throw std::invalid_argument(
        "mixed ramified-unramified extensions are not supported");
  int deg = std::max(e, f);
  if (deg > kMaxDeg)
    throw std::invalid_argument("extension degree exceeds supported maximum");

  auto spec = std::shared_ptr<RingSpec>(new RingSpec());
  spec->p_ = p;
  spec->e_ = e;
  spec->f_ = f;
  spec->m_ = m;
  spec->deg_ = deg;

  if (f > 1) {
    spec->family_ = Family::unramified;
    if (static_cast<int>(defining_data.size()) != f + 1)
      throw std::invalid_argument("unramified defining polynomial must have degree f");
    if (defining_data.back() != 1)
      throw std::invalid_argument("defining polynomial must be monic");
    if (!poly_irreducible_mod_p(defining_data, p))
      throw std::invalid_argument("defining polynomial is reducible mod p");
  } else if (e > 1) {
    spec->family_ = Family::ramified;
    if (static_cast<int>(defining_data.size()) != e + 1)
      throw std::invalid_argument("Eisenstein polynomial must have degree e");
    if (defining_data.back() != 1)
      throw std::invalid_argument("Eisenstein polynomial must be monic");
    for (int i = 0; i < e; ++i)
      if (reduce_ll(defining_data[static_cast<size_t>(i)], p) != 0)
        throw std::invalid_argument(
            "not Eisenstein: lower coefficients must be divisible by p");
    if (reduce_ll(defining_data[0], p * p) == 0)
      throw std::invalid_argument(
          "not Eisenstein: constant term divisible by p^2");
  } else {
    spec->family_ = Family::prime_power;
    if (!defining_data.empty())
      throw std::invalid_argument("no defining polynomial expected for e = f = 1");
  }
  spec->defining_ = std::move(defining_data);

  // residue field size
  unsigned __int128 q = 1;
  for (int i = 0; i < f; ++i) {
    q *= p;
    if (q > (static_cast<unsigned __int128>(1) << 62))
      throw std::invalid_argument("residue field too large");
  }
  spec->q_ = static_cast<std::uint64_t>(q);

  // per-coordinate moduli
  spec->mu0_ = (m + e - 1) / e;
  unsigned __int128 total = 1;
  for (int i = 0; i < deg; ++i) {
    int mu = (spec->family_ == Family::ramified) ? (m - i + e - 1) / e : m;
    if (mu < 0) mu = 0;
    unsigned __int128 pm = 1;
    for (int j = 0; j < mu; ++j) {
      pm *= p;
      if (pm > (static_cast<unsigned __int128>(1) << 62))
        throw std::invalid_argument("precision too large for exact arithmetic");
    }
    spec->mod_[static_cast<size_t>(i)] = static_cast<std::uint64_t>(pm);
    total *= pm;
    if (total > (static_cast<unsigned __int128>(1) << 62))
      throw std::invalid_argument("ring too large for exact arithmetic");
  }
  for (int i = deg; i < kMaxDeg; ++i) spec->mod_[static_cast<size_t>(i)] = 1;
  spec->size_ = static_cast<std::uint64_t>(total);

  // reduced defining coefficients at the working modulus
  std::uint64_t work = spec->mod_[0];
  for (int i = 0; i < deg; ++i)
    spec->redc_[static_cast<size_t>(i)] =
        spec->defining_.empty()
            ? 0
            : reduce_ll(spec->defining_[static_cast<size_t>(i)], work);
  return spec;
}

Ring RingSpec::with_precision(int new_m) const {
  return make(p_, e_, f_, new_m, defining_);
}

// ---- element construction --------------------------------------------

RingElem RingSpec::zero() const {
  RingElem r;
  r.ring_ = this;
  r.c_.fill(0);
  return r;
}

RingElem RingSpec::one() const { return from_int(1); }

RingElem RingSpec::from_int(long long v) const {
  RingElem r = zero();
  r.c_[0] = reduce_ll(v, mod_[0]);
  return r;
}

RingElem RingSpec::from_coords(const std::vector<long long>& coords) const {
  if (static_cast<int>(coords.size()) > deg_)
    throw std::invalid_argument("too many coordinates for this ring");
  RingElem r = zero();
  for (size_t i = 0; i < coords.size(); ++i)
    r.c_[i] = reduce_ll(coords[i], mod_[i]);
  return r;
}

RingElem RingSpec::uniformizer() const {
  if (family_ == Family::ramified) {
    RingElem r = zero();
    if (deg_ > 1) r.c_[1] = mod_[1] > 1 ? 1 : 0;
    return r;
  }
  return from_int(static_cast<long long>(p_));
}

RingElem RingSpec::pi_pow(int k) const {
  if (k >= m_) return zero();
  RingElem r = one();
  RingElem pi = uniformizer();
  for (int i = 0; i < k; ++i) r = mul(r, pi);
  return r;
}

// ---- arithmetic --------------------------------------------------------

void RingSpec::check_same_ring(const RingElem& a, const RingElem& b) const {
  if (a.ring_ != this || b.ring_ != this)
    throw std::invalid_argument("elements belong to different rings");
}

RingElem RingSpec::add(const RingElem& a, const RingElem& b) const {
  check_same_ring(a, b);
  RingElem r = zero();
  for (int i = 0; i < deg_; ++i) {
    size_t k = static_cast<size_t>(i);
    r.c_[k] = mod_[k] <= 1 ? 0 : addmod(a.c_[k], b.c_[k], mod_[k]);
  }
  return r;
}

RingElem RingSpec::sub(const RingElem& a, const RingElem& b) const {
  check_same_ring(a, b);
  RingElem r = zero();
  for (int i = 0; i < deg_; ++i) {
    size_t k = static_cast<size_t>(i);
    r.c_[k] = mod_[k] <= 1 ? 0 : submod(a.c_[k], b.c_[k], mod_[k]);
  }
  return r;
}

RingElem RingSpec::neg(const RingElem& a) const {
  return sub(zero(), a);
}

RingElem RingSpec::mul(const RingElem& a, const RingElem& b) const {
  check_same_ring(a, b);
  if (family_ == Family::prime_power) {
    RingElem r = zero();
    r.c_[0] = mulmod(a.c_[0], b.c_[0], mod_[0]);
    return r;
  }
  // polynomial product at the working modulus, then degree reduction
  std::uint64_t work = mod_[0];
  std::array<std::uint64_t, 2 * kMaxDeg> c{};
  for (int i = 0; i < deg_; ++i)
    for (int j = 0; j < deg_; ++j) {
      size_t k = static_cast<size_t>(i + j);
      c[k] = addmod(c[k], mulmod(a.c_[static_cast<size_t>(i)],
                                 b.c_[static_cast<size_t>(j)], work),
                    work);
    }
  // x^deg = -(g_0 + g_1 x + ... + g_{deg-1} x^{deg-1})  (g monic)
  for (int j = 2 * deg_ - 2; j >= deg_; --j) {
    std::uint64_t t = c[static_cast<size_t>(j)];
    if (t == 0) continue;
    c[static_cast<size_t>(j)] = 0;
    for (int i = 0; i < deg_; ++i) {
      size_t k = static_cast<size_t>(j - deg_ + i);
      c[k] = submod(c[k], mulmod(t, redc_[static_cast<size_t>(i)], work), work);
    }
  }
  RingElem r = zero();
  for (int i = 0; i < deg_; ++i) {
    size_t k = static_cast<size_t>(i);
    r.c_[k] = mod_[k] <= 1 ? 0 : c[k] % mod_[k];
  }
  return r;
}

int RingSpec::valuation(const RingElem& a) const {
  if (a.ring_ != this)
    throw std::invalid_argument("element belongs to a different ring");
  int best = m_;
  for (int i = 0; i < deg_; ++i) {
    std::uint64_t ci = a.c_[static_cast<size_t>(i)];
    if (ci == 0) continue;
    int v;
    if (family_ == Family::ramified)
      v = e_ * vp_u64(ci, p_, m_) + i;
    else
      v = vp_u64(ci, p_, m_);
    best = std::min(best, v);
  }
  return best;
}

// ---- RingElem forwarding ----------------------------------------------

bool RingElem::is_zero() const {
  for (int i = 0; i < ring_->deg(); ++i)
    if (c_[static_cast<size_t>(i)] != 0) return false;
  return true;
}

int RingElem::valuation() const { return ring_->valuation(*this); }

RingElem RingElem::operator+(const RingElem& o) const { return ring_->add(*this, o); }
RingElem RingElem::operator-(const RingElem& o) const { return ring_->sub(*this, o); }
RingElem RingElem::operator*(const RingElem& o) const { return ring_->mul(*this, o); }
RingElem RingElem::operator-() const { return ring_->neg(*this); }

RingElem RingElem::pow(std::uint64_t n) const {
  RingElem acc = ring_->one();
  RingElem base = *this;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

RingElem RingElem::inverse() const {
  if (!is_unit())
    throw std::domain_error("not invertible, valuation >= 1");
  // |R*| = q^m - q^{m-1}; Lagrange gives a^{|R*| - 1} = a^{-1}
  std::uint64_t units = ring_->unit_count();
  RingElem inv = pow(units - 1);
  assert((inv * *this) == ring_->one());
  return inv;
}

std::string RingElem::str() const { return ring_->format(*this); }

// ---- enumeration --------------------------------------------------------

void RingSpec::for_each_element(const std::function<void(const RingElem&)>& fn,
                                std::uint64_t budget) const {
  if (size_ > budget) throw BudgetExceeded(size_, budget);
  RingElem cur = zero();
  while (true) {
    fn(cur);
    int i = 0;
    for (; i < deg_; ++i) {
      size_t k = static_cast<size_t>(i);
      if (mod_[k] <= 1) continue;
      if (++cur.c_[k] < mod_[k]) break;
      cur.c_[k] = 0;
    }
    if (i == deg_) break;
  }
}

std::vector<RingElem> RingSpec::elements(std::uint64_t budget) const {
  std::vector<RingElem> out;
  out.reserve(static_cast<size_t>(std::min<std::uint64_t>(size_, budget)));
  for_each_element([&](const RingElem& x) { out.push_back(x); }, budget);
  return out;
}

std::uint64_t RingSpec::element_index(const RingElem& a) const {
  std::uint64_t index = 0, stride = 1;
  for (int i = 0; i < deg_; ++i) {
    index += a.coord(i) * stride;
    stride *= mod_[static_cast<size_t>(i)];
  }
  return index;
}

RingElem RingSpec::element_at(std::uint64_t index) const {
  RingElem r = zero();
  for (int i = 0; i < deg_; ++i) {
    std::uint64_t mod = mod_[static_cast<size_t>(i)];
    r.c_[static_cast<size_t>(i)] = index % mod;
    index /= mod;
  }
  return r;
}

RingElem RingSpec::residue_representative(std::uint64_t r) const {
  if (r >= q_) throw std::invalid_argument("residue index out of range");
  RingElem out = zero();
  if (family_ == Family::unramified) {
    for (int i = 0; i < deg_ && r; ++i) {
      out.c_[static_cast<size_t>(i)] = r % p_;
      r /= p_;
    }
    return out;
  }
  out.c_[0] = mod_[0] <= 1 ? 0 : r;
  return out;
}

std::vector<std::vector<long long>> RingSpec::pi_multiplication_matrix() const {
  std::vector<std::vector<long long>> mat(
      static_cast<size_t>(deg_),
      std::vector<long long>(static_cast<size_t>(deg_), 0));
  if (family_ != Family::ramified) {
    for (int i = 0; i < deg_; ++i)
      mat[static_cast<size_t>(i)][static_cast<size_t>(i)] =
          static_cast<long long>(p_);
    return mat;
  }
  // pi * pi^i = pi^{i+1}; pi * pi^{e-1} = -(E_0 + ... + E_{e-1} pi^{e-1})
  for (int i = 0; i + 1 < deg_; ++i)
    mat[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 1;
  for (int i = 0; i < deg_; ++i)
    mat[static_cast<size_t>(i)][static_cast<size_t>(deg_ - 1)] =
        -defining_[static_cast<size_t>(i)];
  return mat;
}

// ---- parsing / formatting -----------------------------------------------

namespace {

std::vector<long long> parse_coeff_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(std::stoll(item));
  return out;
}

}  // namespace

Ring RingSpec::parse(const std::string& text) {
  try {
    if (text.rfind("GR(", 0) == 0 || text.rfind("Eis(", 0) == 0) {
      bool unram = text[0] == 'G';
      size_t open = text.find('('), close = text.find(')');
      size_t colon = text.find(':', close);
      if (close == std::string::npos || colon == std::string::npos)
        throw std::invalid_argument("missing ')' or ':'");
      std::vector<long long> head =
          parse_coeff_list(text.substr(open + 1, close - open - 1));
      std::vector<long long> poly = parse_coeff_list(text.substr(colon + 1));
      if (unram) {
        if (head.size() != 3) throw std::invalid_argument("GR needs p,m,f");
        return make(static_cast<std::uint64_t>(head[0]), 1,
                    static_cast<int>(head[2]), static_cast<int>(head[1]), poly);
      }
      if (head.size() != 2) throw std::invalid_argument("Eis needs p,m");
      return make(static_cast<std::uint64_t>(head[0]),
                  static_cast<int>(poly.size()) - 1, 1,
                  static_cast<int>(head[1]), poly);
    }
    size_t caret = text.find('^');
    std::uint64_t p = std::stoull(text.substr(0, caret));
    int m = 1;
    if (caret != std::string::npos) m = std::stoi(text.substr(caret + 1));
    return make(p, 1, 1, m);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse ring spec: " + text);
  }
}

std::string RingSpec::describe() const {
  std::ostringstream os;
  if (family_ == Family::prime_power) {
    os << p_ << "^" << m_;
    return os.str();
  }
  if (family_ == Family::unramified)
    os << "GR(" << p_ << "," << m_ << "," << f_ << "):";
  else
    os << "Eis(" << p_ << "," << m_ << "):";
  for (size_t i = 0; i < defining_.size(); ++i) {
    if (i) os << ",";
    os << defining_[i];
  }
  return os.str();
}

std::string RingSpec::format(const RingElem& a) const {
  if (deg_ == 1) return std::to_string(a.coord(0));
  std::ostringstream os;
  for (int i = 0; i < deg_; ++i) {
    if (i) os << ":";
    os << a.coord(i);
  }
  return os.str();
}

RingElem RingSpec::parse_elem(const std::string& text) const {
  if (text.find(':') == std::string::npos)
    return from_int(std::stoll(text));
  std::vector<long long> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) coords.push_back(std::stoll(item));
  return from_coords(coords);
}

// ---- lemma-backed helpers ----------------------------------------------

std::vector<RingElem> square_roots_of_one(const Ring& ring,
                                          std::uint64_t budget) {
  std::vector<RingElem> roots;
  RingElem one = ring->one();
  ring->for_each_element(
      [&](const RingElem& a) {
        if (a * a == one) roots.push_back(a);
      },
      budget);
  std::sort(roots.begin(), roots.end());
  std::vector<RingElem> expected = {one, -one};
  std::sort(expected.begin(), expected.end());
  if (roots != expected)
    throw std::logic_error(
        "square roots of 1 differ from {1, -1}; ring construction is broken");
  return roots;
}

}  // namespace lielat
