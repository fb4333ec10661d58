#include "ivl/coeff_field.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace ivl {

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("malformed integer literal '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("malformed integer literal '" + std::string(s) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DivisionByZero("zero denominator in rational literal");
  BigRational q(parse_int(text.substr(0, slash)), den);
  q.canonicalize();
  return q;
}

namespace {

bool is_squarefree(long d) {
  unsigned long n = static_cast<unsigned long>(std::labs(d));
  for (unsigned long f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
  }
  return true;
}

bool is_perfect_square(long v) {
  if (v < 0) return false;
  BigInt z(v);
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

}  // namespace

FieldDescriptor::FieldDescriptor(std::span<const long> radicands) {
  if (radicands.size() > kMaxRadicands) {
    throw InvalidField("at most two radicands are supported");
  }
  for (std::size_t i = 0; i < radicands.size(); ++i) {
    long d = radicands[i];
    if (d == 0 || d == 1) throw InvalidField("radicand must not be 0 or 1");
    if (!is_squarefree(d)) throw InvalidField("radicand " + std::to_string(d) + " is not squarefree");
    radicands_[i] = d;
  }
  count_ = radicands.size();
  for (unsigned mask = 1; mask < degree(); ++mask) {
    if (is_perfect_square(mask_product(mask))) {
      throw InvalidField("radicands " + to_string() + " do not give a field of degree " +
                         std::to_string(degree()));
    }
  }
}

long FieldDescriptor::mask_product(unsigned mask) const {
  long p = 1;
  for (std::size_t i = 0; i < count_; ++i) {
    if (mask & (1u << i)) p *= radicands_[i];
  }
  return p;
}

std::string FieldDescriptor::to_string() const {
  std::string s = "Q";
  for (std::size_t i = 0; i < count_; ++i) {
    s += (i == 0 ? "(" : ", ");
    s += "sqrt(" + std::to_string(radicands_[i]) + ")";
  }
  if (count_ > 0) s += ")";
  return s;
}

GaloisSigns::GaloisSigns(std::initializer_list<std::pair<long, int>> signs) {
  for (auto [d, s] : signs) set(d, s);
}

void GaloisSigns::set(long radicand, int sign) {
  if (sign != 1 && sign != -1) throw Error("Galois sign must be +1 or -1");
  auto it = std::lower_bound(flips_.begin(), flips_.end(), std::make_pair(radicand, -2));
  bool present = it != flips_.end() && it->first == radicand;
  if (sign == 1) {
    if (present) flips_.erase(it);
  } else if (!present) {
    flips_.insert(it, {radicand, -1});
  }
}

int GaloisSigns::sign(long radicand) const {
  for (const auto& [d, s] : flips_) {
    if (d == radicand) return s;
  }
  return 1;
}

bool GaloisSigns::is_identity() const { return flips_.empty(); }

int GaloisSigns::basis_sign(const FieldDescriptor& f, unsigned mask) const {
  int s = 1;
  for (std::size_t i = 0; i < f.count(); ++i) {
    if (mask & (1u << i)) s *= sign(f.radicand(i));
  }
  return s;
}

GaloisSigns operator*(const GaloisSigns& a, const GaloisSigns& b) {
  GaloisSigns r = a;
  for (const auto& [d, s] : b.flips_) r.set(d, r.sign(d) * s);
  return r;
}

bool operator==(const GaloisSigns& a, const GaloisSigns& b) { return a.flips_ == b.flips_; }

std::string GaloisSigns::to_string() const {
  if (flips_.empty()) return "id";
  std::string s;
  for (const auto& [d, sg] : flips_) {
    if (!s.empty()) s += ", ";
    s += "sqrt(" + std::to_string(d) + ") -> -1";
  }
  return s;
}

FieldElem::FieldElem(const FieldDescriptor& f, const BigRational& q) : field_(f), coords_(f.degree()) {
  coords_[0] = q;
  coords_[0].canonicalize();
}

FieldElem::FieldElem(const FieldDescriptor& f, Coords coords) : field_(f), coords_(std::move(coords)) {
  if (coords_.size() != f.degree()) throw DescriptorMismatch("coordinate count does not match field degree");
  for (auto& q : coords_) q.canonicalize();
}

FieldElem FieldElem::basis(const FieldDescriptor& f, unsigned mask) {
  if (mask >= f.degree()) throw DescriptorMismatch("basis index out of range");
  FieldElem e(f);
  e.coords_[mask] = 1;
  return e;
}

bool FieldElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigRational& q) { return q == 0; });
}

bool FieldElem::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const BigRational& q) { return q == 0; });
}

bool FieldElem::is_one() const { return is_rational() && coords_[0] == 1; }

FieldElem FieldElem::embedded_in(const FieldDescriptor& f) const {
  if (field_ == f) return *this;
  if (field_.count() == 0) return FieldElem(f, coords_[0]);
  // Map each of our radicands to its index in f.
  std::array<unsigned, FieldDescriptor::kMaxRadicands> pos{};
  for (std::size_t i = 0; i < field_.count(); ++i) {
    auto r = f.radicands();
    auto it = std::find(r.begin(), r.end(), field_.radicand(i));
    if (it == r.end()) {
      throw DescriptorMismatch("cannot embed " + field_.to_string() + " into " + f.to_string());
    }
    pos[i] = static_cast<unsigned>(it - r.begin());
  }
  FieldElem out(f);
  for (unsigned mask = 0; mask < coords_.size(); ++mask) {
    unsigned target = 0;
    for (std::size_t i = 0; i < field_.count(); ++i) {
      if (mask & (1u << i)) target |= 1u << pos[i];
    }
    out.coords_[target] = coords_[mask];
  }
  return out;
}

void FieldElem::unify(const FieldElem& o) {
  if (field_ == o.field_ || o.field_.count() == 0) return;
  if (field_.count() == 0) {
    BigRational q = coords_[0];
    field_ = o.field_;
    coords_.assign(field_.degree(), BigRational(0));
    coords_[0] = q;
    return;
  }
  throw DescriptorMismatch("operands live in " + field_.to_string() + " and " + o.field_.to_string());
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  unify(o);
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  unify(o);
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  if (b.field_.count() == 0) {
    FieldElem r = a;
    for (auto& c : r.coords_) c *= b.coords_[0];
    return r;
  }
  if (a.field_.count() == 0) return b * a;
  if (!(a.field_ == b.field_)) {
    throw DescriptorMismatch("operands live in " + a.field_.to_string() + " and " + b.field_.to_string());
  }
  FieldElem r(a.field_);
  BigRational t;
  for (unsigned i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] == 0) continue;
    for (unsigned j = 0; j < b.coords_.size(); ++j) {
      if (b.coords_[j] == 0) continue;
      t = a.coords_[i] * b.coords_[j];
      if (unsigned shared = i & j) t *= a.field_.mask_product(shared);
      r.coords_[i ^ j] += t;
    }
  }
  return r;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  if (o.field_.count() == 0) {
    for (auto& c : coords_) c *= o.coords_[0];
    return *this;
  }
  return *this = *this * o;
}

void FieldElem::add_product(const FieldElem& a, const FieldElem& b) {
  if (a.field_.count() == 0 && b.field_.count() == 0 && field_.count() == 0) {
    thread_local BigRational t;
    mpq_mul(t.get_mpq_t(), a.coords_[0].get_mpq_t(), b.coords_[0].get_mpq_t());
    coords_[0] += t;
    return;
  }
  *this += a * b;
}
FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this = *this / o; }

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElem FieldElem::galois(const GaloisSigns& s) const {
  FieldElem r = *this;
  for (unsigned mask = 1; mask < r.coords_.size(); ++mask) {
    if (s.basis_sign(field_, mask) < 0) r.coords_[mask] = -r.coords_[mask];
  }
  return r;
}

namespace {

// Product of the conjugates of e under every nonidentity sign pattern.
FieldElem conjugate_product(const FieldElem& e) {
  const FieldDescriptor& f = e.field();
  FieldElem acc(f, BigRational(1));
  for (unsigned pattern = 1; pattern < f.degree(); ++pattern) {
    GaloisSigns s;
    for (std::size_t i = 0; i < f.count(); ++i) {
      if (pattern & (1u << i)) s.set(f.radicand(i), -1);
    }
    acc = acc * e.galois(s);
  }
  return acc;
}

}  // namespace

BigRational FieldElem::norm() const {
  if (is_rational()) {
    BigRational n = 1;
    for (std::size_t i = 0; i < field_.degree(); ++i) n *= coords_[0];
    return n;
  }
  return (*this * conjugate_product(*this)).coords_[0];
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero field element");
  if (is_rational()) {
    FieldElem r(field_, BigRational(1) / coords_[0]);
    return r;
  }
  FieldElem c = conjugate_product(*this);
  BigRational n = (*this * c).coords_[0];
  for (auto& q : c.coords_) q /= n;
  return c;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field_ == b.field_) return a.coords_ == b.coords_;
  if (a.field_.count() == 0 && b.is_rational()) return a.coords_[0] == b.coords_[0];
  if (b.field_.count() == 0 && a.is_rational()) return a.coords_[0] == b.coords_[0];
  return false;
}

std::size_t FieldElem::hash() const {
  std::size_t h = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const BigRational& q = coords_[i];
    if (q == 0) continue;
    std::size_t v = mpz_get_ui(q.get_num_mpz_t()) * 1000003u + mpz_get_ui(q.get_den_mpz_t());
    if (q < 0) v = ~v;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2) + i;
  }
  return h;
}

std::string FieldElem::to_string() const {
  std::string out;
  for (unsigned mask = 0; mask < coords_.size(); ++mask) {
    const BigRational& q = coords_[mask];
    if (q == 0) continue;
    std::string radical;
    for (std::size_t i = 0; i < field_.count(); ++i) {
      if (mask & (1u << i)) {
        if (!radical.empty()) radical += "*";
        radical += "sqrt(" + std::to_string(field_.radicand(i)) + ")";
      }
    }
    BigRational mag = abs(q);
    std::string term;
    if (radical.empty()) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = radical;
    } else {
      term = mag.get_str() + "*" + radical;
    }
    if (out.empty()) {
      out = (q < 0 ? "-" : "") + term;
    } else {
      out += (q < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& e) { return os << e.to_string(); }

FieldElem sqrt_symbol(long d, const FieldDescriptor& f) {
  if (d == 0) return FieldElem(f);
  for (unsigned mask = 0; mask < f.degree(); ++mask) {
    long p = f.mask_product(mask);
    // d = p * r^2 for rational r  <=>  d * p is a perfect square (p squarefree).
    BigInt dp = BigInt(d) * p;
    if (dp < 0 || mpz_perfect_square_p(dp.get_mpz_t()) == 0) continue;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), dp.get_mpz_t());
    // (c * sqrt(p))^2 = c^2 p = d  with  c = sqrt(d p) / |p|.
    FieldElem::Coords coords(f.degree());
    coords[mask] = BigRational(root, BigInt(p < 0 ? -p : p));
    coords[mask].canonicalize();
    FieldElem e(f, std::move(coords));
    return e;
  }
  throw NotRepresentable("sqrt(" + std::to_string(d) + ") is not in " + f.to_string());
}

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero mod p");
  return pow(a, p - 2, p);
}

}  // namespace modp

namespace {

std::uint64_t reduce(long v, std::uint64_t p) {
  long m = v % static_cast<long>(p);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long>(p) : m);
}

// Tonelli-Shanks; assumes a is a nonzero quadratic residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (modp::pow(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = modp::pow(z, q, p), t = modp::pow(a, q, p), r = modp::pow(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = modp::mul(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = modp::mul(b, b, p);
    m = i;
    c = modp::mul(b, b, p);
    t = modp::mul(t, c, p);
    r = modp::mul(r, b, p);
  }
  return r;
}

}  // namespace

ModularImage ModularImage::for_field(const FieldDescriptor& f, std::uint64_t start) {
  BigInt candidate(static_cast<unsigned long>(start));
  for (;;) {
    mpz_sub_ui(candidate.get_mpz_t(), candidate.get_mpz_t(), 1);
    if (mpz_probab_prime_p(candidate.get_mpz_t(), 30) == 0) continue;
    std::uint64_t p = candidate.get_ui();
    bool ok = true;
    std::array<std::uint64_t, FieldDescriptor::kMaxRadicands> roots{};
    for (std::size_t i = 0; i < f.count() && ok; ++i) {
      std::uint64_t a = reduce(f.radicand(i), p);
      if (a == 0 || modp::pow(a, (p - 1) / 2, p) != 1) {
        ok = false;
      } else {
        roots[i] = sqrt_mod(a, p);
      }
    }
    if (!ok) continue;
    ModularImage img;
    img.p_ = p;
    for (unsigned mask = 0; mask < f.degree(); ++mask) {
      std::uint64_t v = 1;
      for (std::size_t i = 0; i < f.count(); ++i) {
        if (mask & (1u << i)) v = modp::mul(v, roots[i], p);
      }
      img.basis_[mask] = v;
    }
    return img;
  }
}

std::uint64_t ModularImage::map(const FieldElem& e) const {
  std::uint64_t acc = 0;
  for (unsigned mask = 0; mask < e.coords().size(); ++mask) {
    const BigRational& q = e.coords()[mask];
    if (q == 0) continue;
    std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
    std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
    std::uint64_t v = modp::mul(num, modp::inv(den, p_), p_);
    acc = (acc + modp::mul(v, basis_[mask], p_)) % p_;
  }
  return acc;
}

}  // namespace ivl
