#include "leforge/lecycles.hpp"

#include "leforge/error.hpp"
#include "leforge/parse.hpp"

namespace leforge {

// ---------------------------------------------------------------- coordinates

CoordTuple::CoordTuple(VarRing ring, std::vector<LinearForm> forms) : ring_(std::move(ring)), forms_(std::move(forms)) {
  const std::size_t n = ring_.size();
  if (forms_.size() != n)
    throw PreconditionError("coordinate tuple has " + std::to_string(forms_.size()) + " forms for " +
                            std::to_string(n) + " variables");
  a_ = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (forms_[i].coeffs.size() != n) throw PreconditionError("linear form has the wrong length");
    for (std::size_t j = 0; j < n; ++j) a_(i, j) = forms_[i].coeffs[j];
  }
  if (a_.rank() != n) throw PreconditionError("coordinate forms are linearly dependent");
  inv_ = a_.inverse();
}

CoordTuple CoordTuple::standard(const VarRing& ring) {
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < ring.size(); ++i) forms.push_back(LinearForm::from_poly(Poly::variable(ring, i)));
  return CoordTuple(ring, std::move(forms));
}

CoordTuple CoordTuple::parse(const VarRing& ring, const std::vector<std::string>& entries, Rng& rng) {
  if (entries.size() != ring.size())
    throw ParseError("coords lists " + std::to_string(entries.size()) + " forms, ring has " +
                     std::to_string(ring.size()) + " variables");
  // a generic entry avoids variables that are themselves listed as coordinates
  std::vector<bool> pinned(ring.size(), false);
  for (const auto& e : entries)
    if (auto i = ring.index_of(e)) pinned[*i] = true;
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<LinearForm> forms;
    for (const auto& e : entries) {
      if (e != "generic") {
        forms.push_back(parse_linear_form(e, ring));
        continue;
      }
      LinearForm g = rng.linear_form(ring.size(), 9);
      for (std::size_t j = 0; j < ring.size(); ++j)
        if (pinned[j]) g.coeffs[j] = 0;
      forms.push_back(std::move(g));
    }
    RationalMatrix m(ring.size(), ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
      for (std::size_t j = 0; j < ring.size(); ++j) m(i, j) = forms[i].coeffs[j];
    if (m.rank() == ring.size()) return CoordTuple(ring, std::move(forms));
    bool any_generic = false;
    for (const auto& e : entries) any_generic |= e == "generic";
    if (!any_generic) break;
  }
  throw PreconditionError("coordinate forms are linearly dependent");
}

std::vector<std::string> CoordTuple::describe() const {
  std::vector<std::string> out;
  for (const auto& f : forms_) out.push_back(f.to_poly(ring_).to_string());
  return out;
}

// ---------------------------------------------------------------- polar ideals

Ideal jacobian_ideal(const Poly& f) {
  std::vector<Poly> g;
  for (std::size_t i = 0; i < f.ring().size(); ++i) g.push_back(diff(f, i));
  return Ideal(f.ring(), std::move(g));
}

PolarData::PolarData(const Poly& f, const CoordTuple& coords, const Limits& lim)
    : g_(coords.to_coords(f)), sigma_(jacobian_ideal(g_)), lim_(lim) {}

const Ideal& PolarData::gamma(std::size_t k) const {
  auto it = gammas_.find(k);
  if (it != gammas_.end()) return it->second;
  const std::size_t n1 = n_plus_1();
  if (k > n1) throw PreconditionError("polar index out of range");
  const VarRing& r = g_.ring();
  Ideal result(r);
  if (k == 0) {
    result = Ideal::unit(r);
  } else if (k == n1) {
    result = sigma_.is_zero() ? Ideal::unit(r) : Ideal(r);
  } else {
    std::vector<Poly> trailing, leading;
    for (std::size_t i = 0; i < n1; ++i) (i < k ? leading : trailing).push_back(partial(i));
    // J_k : (J_k + K)^inf equals J_k : K^inf, and J_k + K is the Jacobian ideal.
    result = saturate(Ideal(r, trailing), Ideal(r, leading), lim_);
  }
  return gammas_.emplace(k, std::move(result)).first->second;
}

Ideal PolarData::gamma_cut(std::size_t k) const {
  std::vector<Poly> cut;
  for (std::size_t i = 0; i < k; ++i) cut.push_back(Poly::variable(g_.ring(), i));
  return gamma(k).plus(cut);
}

namespace {

std::int64_t finite_local(const Ideal& I, const Limits& lim, const std::string& what, unsigned* stab = nullptr) {
  auto lc = local_colength_origin(I, lim);
  if (!lc.value) throw PreconditionError(what + ": intersection is not zero-dimensional at the origin");
  if (stab && lc.stabilized_at > *stab) *stab = lc.stabilized_at;
  return static_cast<std::int64_t>(*lc.value);
}

}  // namespace

Ideal polar_ideal(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim) {
  PolarData pd(f, coords, lim);
  return pd.gamma(k);
}

std::int64_t polar_number(const PolarData& pd, std::size_t k, const Limits& lim) {
  return finite_local(pd.gamma_cut(k), lim, "polar number " + std::to_string(k));
}

std::int64_t polar_number(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim) {
  PolarData pd(f, coords, lim);
  return polar_number(pd, k, lim);
}

LeNumbers le_numbers(const PolarData& pd, Context& ctx) {
  LeNumbers out;
  out.sigma_dim = local_dim_origin(pd.sigma(), ctx);
  const VarRing& r = pd.g().ring();
  const int top = std::min<int>(out.sigma_dim, static_cast<int>(r.size()) - 1);
  for (int ii = 0; ii <= top; ++ii) {
    auto i = static_cast<std::size_t>(ii);
    std::vector<Poly> cut;
    for (std::size_t j = 0; j < i; ++j) cut.push_back(Poly::variable(r, j));
    Ideal upper = pd.gamma(i + 1).plus(cut).plus(std::vector<Poly>{pd.partial(i)});
    Ideal lower = pd.gamma(i).plus(cut);
    std::int64_t a = finite_local(upper, ctx.limits, "Lê number " + std::to_string(i), &out.max_stabilized_at);
    std::int64_t b = finite_local(lower, ctx.limits, "polar number " + std::to_string(i), &out.max_stabilized_at);
    if (a < b)
      throw Error("Lê number " + std::to_string(i) + " came out negative (" + std::to_string(a) + " - " +
                  std::to_string(b) + ")");
    out.values[i] = a - b;
    if (i > 0) out.polar_numbers[i] = b;
  }
  return out;
}

LeNumbers le_numbers(const Poly& f, const CoordTuple& coords, Context& ctx) {
  PolarData pd(f, coords, ctx.limits);
  return le_numbers(pd, ctx);
}

std::int64_t milnor_number(const Poly& f, const Limits& lim) {
  auto lc = local_colength_origin(jacobian_ideal(f), lim);
  if (!lc.value) throw PreconditionError("critical point at the origin is not isolated");
  return static_cast<std::int64_t>(*lc.value);
}

// ---------------------------------------------------------------- IPA tests

IpaCheck is_ipa_deformation(const Poly& f, const CoordTuple& coords, const Limits& lim) {
  PolarData pd(f, coords, lim);
  const Ideal& g1 = pd.gamma(1);
  IpaCheck out;
  out.ipa = origin_isolated(g1.plus(std::vector<Poly>{Poly::variable(pd.g().ring(), 0)}), lim);
  out.via_f = origin_isolated(g1.plus(std::vector<Poly>{pd.g()}), lim);
  if (out.ipa != out.via_f) out.warning = "the two polar-curve dimension tests disagree";
  return out;
}

bool is_ipa_tuple(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim) {
  Poly g = coords.to_coords(f);
  for (std::size_t i = 1; i <= k && i <= g.ring().size(); ++i) {
    std::vector<std::size_t> lead;
    for (std::size_t j = 0; j + 1 < i; ++j) lead.push_back(j);
    Poly h = restrict_to_zero(g, lead);
    if (!is_ipa_deformation(h, CoordTuple::standard(h.ring()), lim).ipa) return false;
  }
  return true;
}

Poly slice_first(const Poly& f, const CoordTuple& coords) {
  std::vector<std::size_t> first{0};
  return restrict_to_zero(coords.to_coords(f), first);
}

Verdicts verify_slice_formula(const Poly& f, const CoordTuple& coords, Context& ctx) {
  const std::size_t n1 = f.ring().size();
  if (n1 < 2) throw PreconditionError("slice formula needs at least two variables");
  PolarData pd(f, coords, ctx.limits);
  LeNumbers total = le_numbers(pd, ctx);
  std::size_t k = static_cast<std::size_t>(std::clamp(total.sigma_dim + 1, 1, static_cast<int>(n1)));
  if (!is_ipa_tuple(f, coords, k, ctx.limits)) throw PreconditionError("coordinates are not an IPA-tuple");
  Poly h = slice_first(f, coords);
  LeNumbers slice = le_numbers(h, CoordTuple::standard(h.ring()), ctx);
  Verdicts out;
  std::int64_t polar = polar_number(pd, 1, ctx.limits);
  out.push_back(Verdict::check("slice lambda0", slice.at(0), polar + total.at(1), "lambda0(f|V(z0))",
                               "polar(1) " + std::to_string(polar) + " + lambda1(f) " + std::to_string(total.at(1))));
  int top = std::max(slice.sigma_dim, total.sigma_dim - 1);
  for (int i = 1; i <= top; ++i) {
    auto ui = static_cast<std::size_t>(i);
    out.push_back(Verdict::check("slice lambda" + std::to_string(i), slice.at(ui), total.at(ui + 1),
                                 "lambda" + std::to_string(i) + "(f|V(z0))",
                                 "lambda" + std::to_string(i + 1) + "(f)"));
  }
  return out;
}

}  // namespace leforge
