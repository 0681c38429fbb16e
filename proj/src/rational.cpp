#include "marty/rational.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace marty {

cplx PointValue::value() const {
  if (!value_) throw PreconditionError("PointValue: evaluated at a pole");
  return *value_;
}

struct RationalFunction::ZeroCache {
  std::once_flag once;
  std::optional<RootList> zeros;
};

namespace {

double location_scale(cplx z) { return std::max(1.0, std::abs(z)); }

bool close(cplx a, cplx b, double rel_tol) { return std::abs(a - b) <= rel_tol * location_scale(a); }

// Removes up to `limit` factors (z - b) from num. With a known zero list the
// count comes from root matching; otherwise from the remainder test.
int cancel_at(Polynomial& num, std::optional<std::vector<Root>>& zeros, cplx b, int limit,
              const RationalOptions& options) {
  if (limit <= 0 || num.is_zero()) return 0;
  int count = 0;
  if (zeros) {
    auto it = std::find_if(zeros->begin(), zeros->end(),
                           [&](const Root& r) { return close(r.location, b, options.roots.cluster_rel_tol); });
    if (it == zeros->end()) return 0;
    count = std::min(limit, it->multiplicity);
    for (int i = 0; i < count; ++i) num = num.deflate(b).first;
    it->multiplicity -= count;
    if (it->multiplicity == 0) zeros->erase(it);
    return count;
  }
  while (count < limit && num.degree() >= 1) {
    const auto [q, rem] = num.deflate(b);
    if (std::abs(rem) > options.cancel_tol * num.evaluation_scale(b)) break;
    num = q;
    ++count;
  }
  return count;
}

std::optional<std::vector<Root>> zero_entries(const std::optional<RootList>& z) {
  if (!z) return std::nullopt;
  return z->entries();
}

// Union of two pole lists; `combine` picks the multiplicity of a shared pole.
template <class Combine>
std::vector<Root> unite(const RootList& a, const RootList& b, double rel_tol, Combine combine) {
  std::vector<Root> out = a.entries();
  for (const auto& r : b) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Root& e) { return close(e.location, r.location, rel_tol); });
    if (it != out.end())
      it->multiplicity = combine(it->multiplicity, r.multiplicity);
    else
      out.push_back(r);
  }
  return out;
}

int multiplicity_near(const RootList& list, cplx b, double rel_tol) {
  for (const auto& r : list)
    if (close(r.location, b, rel_tol)) return r.multiplicity;
  return 0;
}

}  // namespace

RationalFunction::RationalFunction()
    : RationalFunction(Polynomial{}, RootList{}, RootList{}, RationalOptions{}) {}

RationalFunction::RationalFunction(Polynomial num, RootList poles, std::optional<RootList> zeros,
                                   RationalOptions options)
    : num_(std::move(num)),
      den_(poles.expand()),
      poles_(std::move(poles)),
      options_(options),
      zeros_(std::make_shared<ZeroCache>()) {
  if (num_.is_zero()) {
    poles_ = RootList{};
    den_ = Polynomial::constant(1.0);
    zeros = RootList{};
  } else if (num_.degree() == 0) {
    zeros = RootList{};
  }
  if (zeros) std::call_once(zeros_->once, [&] { zeros_->zeros = std::move(zeros); });
}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den, const RationalOptions& options)
    : RationalFunction() {
  if (den.is_zero()) throw PreconditionError("RationalFunction: denominator is identically zero");
  options_ = options;
  if (num.is_zero()) return;

  const cplx lead = den.leading();
  const RootList den_roots = den.degree() >= 1 ? find_roots(den, options.roots) : RootList{};
  std::optional<std::vector<Root>> zeros =
      num.degree() >= 1 ? find_roots(num, options.roots).entries() : std::vector<Root>{};

  Polynomial n = num;
  std::vector<Root> poles;
  for (const auto& b : den_roots) {
    const int cancelled = cancel_at(n, zeros, b.location, b.multiplicity, options);
    if (b.multiplicity > cancelled) poles.push_back({b.location, b.multiplicity - cancelled});
  }
  *this = RationalFunction(n * (1.0 / lead), RootList(std::move(poles)), RootList(std::move(*zeros)), options);
}

RationalFunction RationalFunction::constant(cplx c) {
  return RationalFunction(Polynomial::constant(c), RootList{}, RootList{}, RationalOptions{});
}

RationalFunction RationalFunction::polynomial(Polynomial p) {
  return RationalFunction(std::move(p), RootList{}, std::nullopt, RationalOptions{});
}

RationalFunction RationalFunction::identity() {
  return RationalFunction(Polynomial({cplx{}, cplx{1.0}}), RootList{}, RootList({Root{cplx{}, 1}}),
                          RationalOptions{});
}

RationalFunction RationalFunction::from_factors(cplx lead, const RootList& zeros, const RootList& poles,
                                                const RationalOptions& options) {
  if (lead == cplx{}) return RationalFunction();
  std::vector<Root> z = zeros.entries();
  std::vector<Root> p;
  for (const auto& b : poles) {
    int mu = b.multiplicity;
    auto it = std::find_if(z.begin(), z.end(),
                           [&](const Root& r) { return close(r.location, b.location, options.roots.cluster_rel_tol); });
    if (it != z.end()) {
      const int c = std::min(mu, it->multiplicity);
      mu -= c;
      it->multiplicity -= c;
      if (it->multiplicity == 0) z.erase(it);
    }
    if (mu > 0) p.push_back({b.location, mu});
  }
  RootList zl(std::move(z));
  return RationalFunction(zl.expand() * lead, RootList(std::move(p)), zl, options);
}

const RootList& RationalFunction::zeros() const {
  std::call_once(zeros_->once, [&] {
    zeros_->zeros = num_.degree() >= 1 ? find_roots(num_, options_.roots) : RootList{};
  });
  return *zeros_->zeros;
}

bool RationalFunction::zeros_known() const { return zeros_->zeros.has_value(); }

cplx RationalFunction::eval_num(cplx z) const {
  if (zeros_known() && !zeros_->zeros->empty()) {
    cplx acc = num_.leading();
    for (const auto& a : *zeros_->zeros) acc *= std::pow(z - a.location, a.multiplicity);
    return acc;
  }
  return num_(z);
}

PointValue RationalFunction::evaluate(cplx z) const {
  cplx d{1.0};
  for (const auto& b : poles_) {
    if (z == b.location) return PointValue::pole();
    d *= std::pow(z - b.location, b.multiplicity);
  }
  if (d == cplx{}) return PointValue::pole();
  return PointValue(eval_num(z) / d);
}

namespace {

// Truncated product of series of length n.
void multiply_series(std::vector<cplx>& acc, const std::vector<cplx>& factor) {
  std::vector<cplx> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    for (std::size_t j = 0; i + j < acc.size() && j < factor.size(); ++j) out[i + j] += acc[i] * factor[j];
  acc = std::move(out);
}

// (w + t)^m truncated to n terms.
std::vector<cplx> binomial_series(cplx w, int m, std::size_t n) {
  std::vector<cplx> out(n);
  double binom = 1.0;
  for (int j = 0; j <= m && static_cast<std::size_t>(j) < n; ++j) {
    out[static_cast<std::size_t>(j)] = binom * std::pow(w, m - j);
    binom = binom * (m - j) / (j + 1);
  }
  return out;
}

}  // namespace

std::vector<cplx> RationalFunction::taylor_at(cplx z, int order) const {
  if (order < 0) throw PreconditionError("taylor_at: order must be >= 0");
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  std::vector<cplx> den(n);
  den[0] = 1.0;
  for (const auto& b : poles_) {
    if (z == b.location) throw PreconditionError("taylor_at: z is a pole");
    multiply_series(den, binomial_series(z - b.location, b.multiplicity, n));
  }
  std::vector<cplx> num(n);
  if (zeros_known() && !zeros_->zeros->empty()) {
    num[0] = num_.leading();
    for (const auto& a : *zeros_->zeros) multiply_series(num, binomial_series(z - a.location, a.multiplicity, n));
  } else {
    const auto t = num_.taylor_coefficients(z);
    for (std::size_t j = 0; j < n && j < t.size(); ++j) num[j] = t[j];
  }
  if (den[0] == cplx{}) throw PreconditionError("taylor_at: z is a pole");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = num[i];
    for (std::size_t j = 1; j <= i; ++j) acc -= den[j] * out[i - j];
    out[i] = acc / den[0];
  }
  return out;
}

PointValue RationalFunction::log_derivative_at(cplx z, int order) const {
  if (order < 0) throw PreconditionError("log_derivative_at: order must be >= 0");
  if (is_zero()) throw PreconditionError("log_derivative_at: f is identically zero");
  const int k = order + 1;
  double scale = (order % 2 == 0) ? 1.0 : -1.0;
  for (int j = 2; j <= order; ++j) scale *= j;
  cplx sum{};
  for (const auto& a : zeros()) {
    if (z == a.location) return PointValue::pole();
    sum += static_cast<double>(a.multiplicity) / std::pow(z - a.location, k);
  }
  for (const auto& b : poles_) {
    if (z == b.location) return PointValue::pole();
    sum -= static_cast<double>(b.multiplicity) / std::pow(z - b.location, k);
  }
  return PointValue(scale * sum);
}

RationalFunction RationalFunction::derivative(int order) const {
  RationalFunction cur = *this;
  for (int step = 0; step < order; ++step) {
    if (cur.is_zero()) return cur;
    if (cur.poles_.empty()) {
      cur = RationalFunction(cur.num_.derivative(), RootList{}, std::nullopt, options_);
      continue;
    }
    // (N/D)' with D = prod (z-b)^mu has reduced denominator prod (z-b)^(mu+1)
    // and numerator N' R - N sum_b mu_b R/(z-b), R = prod (z-b).
    Polynomial radical = Polynomial::constant(1.0);
    for (const auto& b : cur.poles_) radical = radical * Polynomial::linear_factor(b.location);
    Polynomial weighted;
    for (std::size_t i = 0; i < cur.poles_.size(); ++i) {
      Polynomial term = Polynomial::constant(static_cast<double>(cur.poles_[i].multiplicity));
      for (std::size_t j = 0; j < cur.poles_.size(); ++j)
        if (j != i) term = term * Polynomial::linear_factor(cur.poles_[j].location);
      weighted += term;
    }
    Polynomial next = cur.num_.derivative() * radical - cur.num_ * weighted;
    std::vector<Root> bumped = cur.poles_.entries();
    for (auto& b : bumped) ++b.multiplicity;
    cur = RationalFunction(std::move(next), RootList(std::move(bumped)), std::nullopt, options_);
  }
  return cur;
}

RationalFunction RationalFunction::reciprocal() const {
  if (is_zero()) throw PreconditionError("reciprocal of the zero function");
  const cplx lead = num_.leading();
  return RationalFunction(den_ * (1.0 / lead), zeros(), poles_, options_);
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent == 0) return constant(1.0);
  if (exponent < 0) return reciprocal().pow(-exponent);
  std::optional<RootList> z;
  if (zeros_known()) z = zeros_->zeros->scaled(exponent);
  return RationalFunction(num_.pow(exponent), poles_.scaled(exponent), std::move(z), options_);
}

std::pair<RootList, RootList> RationalFunction::zeros_poles() const {
  if (is_zero()) throw PreconditionError("zeros_poles of the zero function");
  return {zeros(), poles_};
}

cplx RationalFunction::laurent_leading(const Root& pole) const {
  cplx d{1.0};
  for (const auto& b : poles_)
    if (!close(b.location, pole.location, options_.roots.cluster_rel_tol))
      d *= std::pow(pole.location - b.location, b.multiplicity);
  return eval_num(pole.location) / d;
}

std::optional<Root> RationalFunction::pole_near(cplx z, double tol) const {
  std::optional<Root> best;
  double best_dist = tol;
  for (const auto& b : poles_) {
    const double d = std::abs(z - b.location);
    if (d <= best_dist) {
      best = b;
      best_dist = d;
    }
  }
  return best;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  const RationalOptions& opt = a.options_;
  const double tol = opt.roots.cluster_rel_tol;
  auto za = zero_entries(a.zeros_known() ? std::optional<RootList>(a.zeros()) : std::nullopt);
  auto zb = zero_entries(b.zeros_known() ? std::optional<RootList>(b.zeros()) : std::nullopt);
  Polynomial na = a.num_;
  Polynomial nb = b.num_;

  std::vector<Root> poles;
  for (auto p : unite(a.poles_, b.poles_, tol, [](int x, int y) { return x + y; })) {
    const int from_a = cancel_at(na, za, p.location, p.multiplicity, opt);
    const int from_b = cancel_at(nb, zb, p.location, p.multiplicity - from_a, opt);
    p.multiplicity -= from_a + from_b;
    if (p.multiplicity > 0) poles.push_back(p);
  }

  std::optional<RootList> zeros;
  if (za && zb) zeros = RootList(std::move(*za)).merged_with(RootList(std::move(*zb)), tol);
  return RationalFunction(na * nb, RootList(std::move(poles)), std::move(zeros), opt);
}

RationalFunction operator*(const RationalFunction& a, cplx c) {
  if (c == cplx{} || a.is_zero()) return RationalFunction();
  std::optional<RootList> z;
  if (a.zeros_known()) z = a.zeros();
  return RationalFunction(a.num_ * c, a.poles_, std::move(z), a.options_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.reciprocal(); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const RationalOptions& opt = a.options_;
  const double tol = opt.roots.cluster_rel_tol;
  const auto lcm = unite(a.poles_, b.poles_, tol, [](int x, int y) { return std::max(x, y); });

  auto cofactor = [&](const RootList& own) {
    Polynomial c = Polynomial::constant(1.0);
    for (const auto& p : lcm) {
      const int missing = p.multiplicity - multiplicity_near(own, p.location, tol);
      if (missing > 0) c = c * Polynomial::linear_factor(p.location).pow(missing);
    }
    return c;
  };
  Polynomial num = a.num_ * cofactor(a.poles_) + b.num_ * cofactor(b.poles_);
  if (num.is_zero()) return RationalFunction();

  std::optional<std::vector<Root>> unknown;
  std::vector<Root> poles;
  for (auto p : lcm) {
    p.multiplicity -= cancel_at(num, unknown, p.location, p.multiplicity, opt);
    if (p.multiplicity > 0) poles.push_back(p);
  }
  return RationalFunction(std::move(num), RootList(std::move(poles)), std::nullopt, opt);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

bool approx_equal(const RationalFunction& a, const RationalFunction& b, double rel_tol) {
  if (a.poles().size() != b.poles().size() || a.num().degree() != b.num().degree()) return false;
  for (std::size_t i = 0; i < a.poles().size(); ++i) {
    if (a.poles()[i].multiplicity != b.poles()[i].multiplicity) return false;
    if (!close(a.poles()[i].location, b.poles()[i].location, rel_tol)) return false;
  }
  const double scale = std::max(a.num().norm1(), b.num().norm1());
  for (int i = 0; i <= a.num().degree(); ++i)
    if (std::abs(a.num()[i] - b.num()[i]) > rel_tol * scale) return false;
  return true;
}

}  // namespace marty
