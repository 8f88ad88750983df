#include "lielat/ssindex.hpp"

#include <sstream>
#include <stdexcept>

namespace lielat {

FieldParams FieldParams::make(std::uint64_t p, int e, int f) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("p must be an odd prime");
  for (std::uint64_t t = 3; t * t <= p; t += 2)
    if (p % t == 0) throw std::invalid_argument("p must be an odd prime");
  if (e < 1 || f < 1) throw std::invalid_argument("e, f must be >= 1");
  FieldParams params;
  params.p = p;
  params.e = e;
  params.f = f;
  params.d = e * f;
  params.q = 1;
  for (int i = 0; i < f; ++i) params.q *= p;
  return params;
}

FieldParams FieldParams::from_ring(const RingSpec& ring) {
  FieldParams params;
  params.p = ring.p();
  params.e = ring.e();
  params.f = ring.f();
  params.d = ring.e() * ring.f();
  params.q = ring.q();
  return params;
}

std::string level_name(IndexLevel level) {
  switch (level) {
    case IndexLevel::full_group: return "group";
    case IndexLevel::congruence_group: return "congruence";
    case IndexLevel::lattice: return "lattice";
  }
  return "?";
}

IndexLevel parse_level(const std::string& name) {
  if (name == "group") return IndexLevel::full_group;
  if (name == "congruence") return IndexLevel::congruence_group;
  if (name == "lattice") return IndexLevel::lattice;
  throw std::invalid_argument("unknown level: " + name);
}

int IndexQuery::n() const {
  switch (family) {
    case Family::sl: return l + 1;
    case Family::sp:
    case Family::so_even: return 2 * l;
    case Family::so_odd: return 2 * l + 1;
  }
  return 0;
}

std::string Violation::render() const {
  std::ostringstream os;
  os << lhs << (lhs > rhs ? " > " : " < ") << rhs;
  return os.str();
}

PreconditionError::PreconditionError(std::vector<Violation> violations)
    : std::domain_error([&violations] {
        std::string msg = "precondition violated:";
        for (const auto& v : violations)
          msg += " [" + v.constraint + ": " + v.render() + "]";
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> check_preconditions(const IndexQuery& query,
                                           const FieldParams& params) {
  std::vector<Violation> out;
  long long l = query.l;
  long long d = params.d;
  if (query.k < 1)
    out.push_back({"k >= 1", BigInt(query.k), BigInt(1)});
  if (l < 1) out.push_back({"l >= 1", BigInt(l), BigInt(1)});
  if (query.family == Family::so_even && l < 2)
    out.push_back({"l >= 2 for even so", BigInt(l), BigInt(2)});

  if (query.level == IndexLevel::lattice) {
    if (query.m < 0) out.push_back({"m >= 0", BigInt(query.m), BigInt(0)});
    return out;
  }

  if (query.m < params.e)
    out.push_back({"m >= e", BigInt(query.m), BigInt(params.e)});
  long long dim_bound = 0;
  switch (query.family) {
    case Family::sl: dim_bound = (l * l + 2 * l) * d; break;
    case Family::sp:
    case Family::so_odd: dim_bound = (2 * l * l + l) * d; break;
    case Family::so_even: dim_bound = (2 * l * l - l) * d; break;
  }
  if (dim_bound > static_cast<long long>(params.p))
    out.push_back({"dim <= p", BigInt(dim_bound), BigInt(params.p)});
  return out;
}

namespace {

// q^{E} prod_{j} (1 - q^{-j}) as q^{E - sum j} prod (q^j - 1)
BigInt factored_product(std::uint64_t q, std::uint64_t e_exp,
                        const std::vector<std::uint64_t>& js) {
  std::uint64_t shift = 0;
  for (std::uint64_t j : js) shift += j;
  if (shift > e_exp) throw std::logic_error("product does not clear the q-power");
  BigInt result = big_pow(BigInt(q), e_exp - shift);
  for (std::uint64_t j : js) result *= big_pow(BigInt(q), j) - 1;
  return result;
}

}  // namespace

BigInt ss_index(const IndexQuery& query, const FieldParams& params) {
  std::vector<Violation> violations = check_preconditions(query, params);
  if (!violations.empty()) throw PreconditionError(std::move(violations));

  std::uint64_t q = params.q;
  std::uint64_t l = static_cast<std::uint64_t>(query.l);
  std::uint64_t k = static_cast<std::uint64_t>(query.k);
  std::uint64_t m = static_cast<std::uint64_t>(query.m);
  std::uint64_t fnk =
      static_cast<std::uint64_t>(index_exponent_factor(query.family, query.n())) * k;

  if (query.level != IndexLevel::full_group)
    return big_pow(BigInt(q), fnk);

  std::vector<std::uint64_t> js;
  switch (query.family) {
    case Family::sl:
      for (std::uint64_t i = 1; i <= l; ++i) js.push_back(i + 1);
      return factored_product(q, l * k + (l * l + 2 * l) * m, js);
    case Family::sp:
      for (std::uint64_t i = 1; i <= l; ++i) js.push_back(2 * i);
      return factored_product(q, 2 * l * k + (2 * l * l + l) * m, js);
    case Family::so_even:
      js.push_back(l);
      for (std::uint64_t i = 1; i + 1 <= l; ++i) js.push_back(2 * i);
      return factored_product(q, (2 * l - 2) * k + (2 * l * l - l) * m, js);
    case Family::so_odd:
      for (std::uint64_t i = 1; i <= l; ++i) js.push_back(2 * i);
      return factored_product(q, (2 * l - 1) * k + (2 * l * l + l) * m, js);
  }
  throw std::logic_error("unreachable");
}

BigInt min_index_bound(const IndexQuery& query, const FieldParams& params) {
  if (query.level == IndexLevel::lattice)
    throw std::invalid_argument(
        "minimal-index bounds are stated for groups, not lattices");
  IndexQuery at_one = query;
  at_one.k = 1;
  if (query.level == IndexLevel::full_group) at_one.m = params.e;
  return ss_index(at_one, params);
}

int dims(Family family, int n, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  switch (family) {
    case Family::sl:
      if (n < 2) throw std::invalid_argument("sl needs n >= 2");
      return (n * n - 1) * d;
    case Family::sp:
      if (n < 2 || n % 2) throw std::invalid_argument("sp needs even n");
      return (n * n + n) / 2 * d;
    case Family::so_even:
      if (n < 4 || n % 2) throw std::invalid_argument("so_even needs even n >= 4");
      return (n * n - n) / 2 * d;
    case Family::so_odd:
      if (n < 3 || n % 2 == 0) throw std::invalid_argument("so_odd needs odd n >= 3");
      return (n * n - n) / 2 * d;
  }
  throw std::logic_error("unreachable");
}

}  // namespace lielat
