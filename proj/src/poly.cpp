#include "leforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "leforge/error.hpp"

namespace leforge {

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- VarRing

VarRing::VarRing() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarRing::VarRing(std::vector<std::string> names) {
  if (names.size() > kMaxVars)
    throw PreconditionError("ring has " + std::to_string(names.size()) + " variables, limit is " +
                            std::to_string(kMaxVars));
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!valid_name(names[i])) throw ParseError("invalid variable name '" + names[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw ParseError("duplicate variable name '" + names[i] + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool VarRing::valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<std::size_t> VarRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t VarRing::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw PreconditionError("unknown variable '" + std::string(name) + "'");
  return *i;
}

VarRing VarRing::without(std::span<const std::size_t> drop) const {
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(name(i));
  return VarRing(std::move(keep));
}

std::string VarRing::fresh_name(std::string_view stem) const {
  std::string base(stem);
  if (!index_of(base)) return base;
  for (int k = 1;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!index_of(c)) return c;
  }
}

// ---------------------------------------------------------------- Poly

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; }

void merge_into(std::vector<Term>& out, const std::vector<Term>& a, const std::vector<Term>& b,
                bool negate_b) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = grevlex_cmp(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (negate_b) out.back().coeff = -out.back().coeff;
  }
}

void check_ring(const Poly& a, const Poly& b) {
  if (a.ring() != b.ring()) throw PreconditionError("polynomials live in different rings");
}

}  // namespace

Poly Poly::constant(VarRing ring, const Rational& c) {
  Poly p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::variable(VarRing ring, std::size_t i) {
  return monomial(std::move(ring), Monomial::variable(i), 1);
}

Poly Poly::monomial(VarRing ring, const Monomial& m, const Rational& c) {
  Poly p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(VarRing ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

bool Poly::involves(std::size_t i) const {
  return std::any_of(terms_.begin(), terms_.end(), [i](const Term& t) { return t.mono[i] != 0; });
}

bool Poly::homogeneous_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.degree() == 1; });
}

Poly Poly::operator+(const Poly& o) const {
  check_ring(*this, o);
  Poly r(ring_);
  merge_into(r.terms_, terms_, o.terms_, false);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_ring(*this, o);
  Poly r(ring_);
  merge_into(r.terms_, terms_, o.terms_, true);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_ring(*this, o);
  if (is_zero() || o.is_zero()) return Poly(ring_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.push_back({a.mono * b.mono, a.coeff * b.coeff});
  return from_terms(ring_, std::move(acc));
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::operator-() const { return *this * Rational(-1); }

Poly Poly::mul_term(const Monomial& m, const Rational& c) const {
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (ring_ != o.ring_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational a = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < ring_.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_.name(i);
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------- free functions

Poly diff(const Poly& p, std::size_t var) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Exponent e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  return Poly::from_terms(p.ring(), std::move(out));
}

Poly diff(const Poly& p, std::string_view var) { return diff(p, p.ring().require(var)); }

Rational evaluate(const Poly& p, std::span<const Rational> point) {
  if (point.size() != p.ring().size())
    throw PreconditionError("point has " + std::to_string(point.size()) + " coordinates, ring has " +
                            std::to_string(p.ring().size()));
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (Exponent e = 0; e < t.mono[i]; ++e) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

namespace {

/// Lazily built powers of one polynomial.
class PowerCache {
 public:
  explicit PowerCache(const Poly& base) : pows_{Poly::constant(base.ring(), 1), base} {}
  const Poly& get(unsigned e) {
    while (pows_.size() <= e) pows_.push_back(pows_.back() * pows_[1]);
    return pows_[e];
  }

 private:
  std::vector<Poly> pows_;
};

}  // namespace

Poly compose(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.ring().size()) throw PreconditionError("compose: wrong number of images");
  if (images.empty()) return p;
  const VarRing& target = images[0].ring();
  std::vector<PowerCache> cache;
  cache.reserve(images.size());
  for (const auto& im : images) cache.emplace_back(im);
  std::vector<Term> acc;
  for (const auto& t : p.terms()) {
    Poly prod = Poly::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i)
      if (t.mono[i]) prod = prod * cache[i].get(t.mono[i]);
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return Poly::from_terms(target, std::move(acc));
}

Poly substitute(const Poly& p, std::size_t var, const Poly& value) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.ring().size(); ++i)
    images.push_back(i == var ? value : Poly::variable(p.ring(), i));
  return compose(p, images);
}

Poly rename_into(const Poly& p, const VarRing& target, std::span<const std::size_t> index_map) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < p.ring().size(); ++i)
      if (t.mono[i]) m.set(index_map[i], t.mono[i]);
    out.push_back({m, t.coeff});
  }
  return Poly::from_terms(target, std::move(out));
}

Poly restrict_to_zero(const Poly& p, std::span<const std::size_t> vars) {
  VarRing sub = p.ring().without(vars);
  std::vector<std::size_t> map(p.ring().size(), 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < p.ring().size(); ++i) {
    if (std::find(vars.begin(), vars.end(), i) == vars.end()) map[i] = next++;
  }
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    bool killed = std::any_of(vars.begin(), vars.end(), [&](std::size_t v) { return t.mono[v] != 0; });
    if (killed) continue;
    Monomial m;
    for (std::size_t i = 0; i < p.ring().size(); ++i)
      if (t.mono[i]) m.set(map[i], t.mono[i]);
    out.push_back({m, t.coeff});
  }
  return Poly::from_terms(sub, std::move(out));
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) den = lcm(den, mpz_class(t.coeff.get_den()));
  for (const auto& t : p.terms()) num = gcd(num, mpz_class(t.coeff.get_num() * (den / t.coeff.get_den())));
  Rational scale(den, num);
  scale.canonicalize();
  if (p.leading_coeff() < 0) scale = -scale;
  return p * scale;
}

Poly exact_divide(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw PreconditionError("division by zero polynomial");
  const Term& lead = d.terms().front();
  std::vector<Term> q;
  Poly r = p;
  while (!r.is_zero()) {
    const Term& lt = r.terms().front();
    if (!lead.mono.divides(lt.mono)) throw PreconditionError("inexact polynomial division");
    Monomial m = lt.mono / lead.mono;
    Rational c = lt.coeff / lead.coeff;
    q.push_back({m, c});
    r = r - d.mul_term(m, c);
  }
  return Poly::from_terms(p.ring(), std::move(q));
}

// ---------------------------------------------------------------- matrices

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  return r;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix a = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && a(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(a(r, j), a(piv, j));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols_; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw PreconditionError("matrix is not square");
  std::size_t n = rows_;
  RationalMatrix a = *this, inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw PreconditionError("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Poly linear_change(const Poly& p, const RationalMatrix& m) {
  std::size_t n = p.ring().size();
  if (m.rows() != n || m.cols() != n) throw PreconditionError("matrix size does not match ring");
  if (m.rank() != n) throw PreconditionError("singular matrix");
  std::vector<Poly> images;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < n; ++i)
      if (m(j, i) != 0) ts.push_back({Monomial::variable(i), m(j, i)});
    images.push_back(Poly::from_terms(p.ring(), std::move(ts)));
  }
  return compose(p, images);
}

LinearForm LinearForm::from_poly(const Poly& p) {
  if (!p.homogeneous_linear() || p.is_zero())
    throw ParseError("'" + p.to_string() + "' is not a nonzero linear form");
  LinearForm f;
  f.coeffs.assign(p.ring().size(), 0);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < p.ring().size(); ++i)
      if (t.mono[i]) f.coeffs[i] = t.coeff;
  return f;
}

Poly LinearForm::to_poly(const VarRing& ring) const {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) ts.push_back({Monomial::variable(i), coeffs[i]});
  return Poly::from_terms(ring, std::move(ts));
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

}  // namespace leforge
