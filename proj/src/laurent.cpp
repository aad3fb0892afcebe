#include "mahler/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahler {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("exponent overflow in polynomial arithmetic");
  return r;
}

}  // namespace

bool GradedLex::operator()(const ExponentVec& a, const ExponentVec& b) const {
  std::int64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

LaurentPoly LaurentPoly::constant(GaussianRational c) {
  LaurentPoly p;
  if (!c.is_zero()) p.terms_.emplace(ExponentVec{}, std::move(c));
  return p;
}

LaurentPoly LaurentPoly::variable(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  LaurentPoly p;
  p.vars_ = {name};
  p.terms_.emplace(ExponentVec{1}, GaussianRational{1});
  return p;
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, ExponentVec exps,
                                  GaussianRational coeff) {
  if (vars.size() != exps.size())
    throw std::invalid_argument("monomial: variable/exponent length mismatch");
  LaurentPoly p;
  p.vars_ = std::move(vars);
  if (!coeff.is_zero()) p.terms_.emplace(std::move(exps), std::move(coeff));
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
}

GaussianRational LaurentPoly::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.empty() ? GaussianRational{} : terms_.begin()->second;
}

int LaurentPoly::var_index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool LaurentPoly::uses(const std::string& var) const {
  int i = var_index(var);
  if (i < 0) return false;
  for (const auto& [e, c] : terms_)
    if (e[i] != 0) return true;
  return false;
}

std::int64_t LaurentPoly::degree_in(const std::string& var) const {
  int i = var_index(var);
  if (i < 0 || terms_.empty()) return 0;
  std::int64_t d = terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

std::int64_t LaurentPoly::min_exponent_in(const std::string& var) const {
  int i = var_index(var);
  if (i < 0 || terms_.empty()) return 0;
  std::int64_t d = terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
  return d;
}

std::int64_t LaurentPoly::total_degree() const {
  std::int64_t best = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::int64_t s = 0;
    for (auto x : e) s += x;
    if (first || s > best) best = s;
    first = false;
  }
  return best;
}

void LaurentPoly::insert_term(const ExponentVec& e, GaussianRational c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

// Embeds b into the variable space of a extended by b's extra variables.
// Returns the merged skeleton (a's terms, extended exponents); *b_embedded
// receives b in the same space.
LaurentPoly merge_vars(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly* b_embedded) {
  std::vector<std::string> vars = a.vars_;
  std::vector<int> bmap(b.vars_.size());
  for (std::size_t j = 0; j < b.vars_.size(); ++j) {
    auto it = std::find(vars.begin(), vars.end(), b.vars_[j]);
    if (it == vars.end()) {
      vars.push_back(b.vars_[j]);
      bmap[j] = static_cast<int>(vars.size()) - 1;
    } else {
      bmap[j] = static_cast<int>(it - vars.begin());
    }
  }
  const std::size_t n = vars.size();

  LaurentPoly ra;
  ra.vars_ = vars;
  for (const auto& [e, c] : a.terms_) {
    ExponentVec ee(n, 0);
    std::copy(e.begin(), e.end(), ee.begin());
    ra.terms_.emplace(std::move(ee), c);
  }

  if (b_embedded) {
    LaurentPoly rb;
    rb.vars_ = vars;
    for (const auto& [e, c] : b.terms_) {
      ExponentVec ee(n, 0);
      for (std::size_t j = 0; j < e.size(); ++j) ee[bmap[j]] = e[j];
      rb.terms_.emplace(std::move(ee), c);
    }
    *b_embedded = std::move(rb);
  }
  return ra;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  LaurentPoly ob;
  LaurentPoly r = merge_vars(*this, o, &ob);
  for (const auto& [e, c] : ob.terms_) r.insert_term(e, c);
  return *this = std::move(r);
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  LaurentPoly ob;
  LaurentPoly r = merge_vars(*this, o, &ob);
  for (const auto& [e, c] : ob.terms_) r.insert_term(e, -c);
  return *this = std::move(r);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly eb;
  LaurentPoly ea = merge_vars(a, b, &eb);
  LaurentPoly r;
  r.vars_ = ea.vars_;
  const std::size_t n = r.vars_.size();
  ExponentVec e(n);
  for (const auto& [ea_e, ea_c] : ea.terms_) {
    for (const auto& [eb_e, eb_c] : eb.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = checked_add(ea_e[i], eb_e[i]);
      r.insert_term(e, ea_c * eb_c);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::scaled(const GaussianRational& c) const {
  LaurentPoly r;
  r.vars_ = vars_;
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

LaurentPoly LaurentPoly::pow(std::uint64_t e) const {
  LaurentPoly acc = constant(1);
  LaurentPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

LaurentPoly LaurentPoly::pruned() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  std::vector<std::string> vars;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) {
      vars.push_back(vars_[i]);
      keep.push_back(i);
    }
  LaurentPoly r;
  r.vars_ = std::move(vars);
  for (const auto& [e, c] : terms_) {
    ExponentVec ee(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) ee[j] = e[keep[j]];
    r.terms_.emplace(std::move(ee), c);
  }
  return r;
}

LaurentPoly LaurentPoly::with_variables(std::vector<std::string> vars) const {
  std::vector<int> map(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      if (uses(vars_[i]))
        throw std::invalid_argument("with_variables: dropped variable " + vars_[i] +
                                    " is still used");
    } else {
      map[i] = static_cast<int>(it - vars.begin());
    }
  }
  LaurentPoly r;
  r.vars_ = std::move(vars);
  const std::size_t n = r.vars_.size();
  for (const auto& [e, c] : terms_) {
    ExponentVec ee(n, 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (map[i] >= 0) ee[map[i]] = e[i];
    r.terms_.emplace(std::move(ee), c);
  }
  return r;
}

LaurentPoly LaurentPoly::renamed(const std::string& from, const std::string& to) const {
  int i = var_index(from);
  if (i < 0) return *this;
  if (from != to && var_index(to) >= 0)
    throw std::invalid_argument("renamed: target variable already present");
  LaurentPoly r = *this;
  r.vars_[i] = to;
  return r;
}

std::map<std::map<std::string, std::int64_t>, GaussianRational> LaurentPoly::canonical_view()
    const {
  std::map<std::map<std::string, std::int64_t>, GaussianRational> view;
  for (const auto& [e, c] : terms_) {
    std::map<std::string, std::int64_t> mono;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) mono.emplace(vars_[i], e[i]);
    view.emplace(std::move(mono), c);
  }
  return view;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.canonical_view() == b.canonical_view();
}

std::complex<double> LaurentPoly::eval(std::span<const std::complex<double>> point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("eval: point dimension mismatch");
  // Evaluate in the canonical (name-sorted) term order so that two
  // representations of the same polynomial follow the same rounding path.
  std::complex<double> acc = 0.0;
  for (const auto& [mono, c] : canonical_view()) {
    std::complex<double> t = c.to_complex();
    for (const auto& [name, exp] : mono) {
      int vi = var_index(name);
      t *= std::pow(point[static_cast<std::size_t>(vi)], static_cast<double>(exp));
    }
    acc += t;
  }
  return acc;
}

GaussianRational LaurentPoly::eval_exact(std::span<const GaussianRational> point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("eval_exact: point dimension mismatch");
  GaussianRational acc{0};
  for (const auto& [e, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::int64_t k = e[i];
      if (k == 0) continue;
      GaussianRational base = k > 0 ? point[i] : point[i].inverse();
      std::uint64_t n = k > 0 ? static_cast<std::uint64_t>(k)
                              : ~static_cast<std::uint64_t>(k) + 1;
      while (n) {
        if (n & 1) t *= base;
        base *= base;
        n >>= 1;
      }
    }
    acc += t;
  }
  return acc;
}

RationalFn::RationalFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
  // A one-term denominator is a unit among Laurent polynomials: fold it in.
  if (den_.term_count() == 1) {
    const auto& [e, c] = *den_.terms().begin();
    bool pure_constant = std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
    if (pure_constant) {
      if (!c.is_one()) num_ = num_.scaled(c.inverse());
    } else {
      ExponentVec inv(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
      num_ = num_ * LaurentPoly::monomial(den_.variables(), std::move(inv), c.inverse());
    }
    den_ = LaurentPoly::constant(1);
  }
}

std::vector<std::string> RationalFn::variables() const {
  std::vector<std::string> vars = num_.variables();
  for (const auto& v : den_.variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  return vars;
}

}  // namespace mahler
