#include "marty/logderiv_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <json.hpp>

namespace marty {

namespace {

using Monomial = std::vector<int>;  // sorted indices j of u_j
using SymbolicPoly = std::map<Monomial, std::int64_t>;

SymbolicPoly differentiate(const SymbolicPoly& p) {
  SymbolicPoly out;
  for (const auto& [mono, coeff] : p) {
    for (std::size_t mu = 0; mu < mono.size(); ++mu) {
      Monomial raised = mono;
      ++raised[mu];
      std::sort(raised.begin(), raised.end());
      out[raised] += coeff;
    }
    Monomial times_u1 = mono;
    times_u1.push_back(1);
    std::sort(times_u1.begin(), times_u1.end());
    out[times_u1] -= coeff * static_cast<std::int64_t>(mono.size());
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

ExpansionTable build_table(int k) {
  SymbolicPoly p{{Monomial{1}, 1}};
  for (int i = 1; i < k; ++i) p = differentiate(p);

  ExpansionTable table;
  table.k = k;
  for (const auto& [mono, coeff] : p) {
    if (mono.size() < 2) continue;  // the lone u_k term, coefficient 1
    table.terms.push_back({mono, -coeff});
  }
  std::sort(table.terms.begin(), table.terms.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) {
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
    return a.parts < b.parts;
  });
  return table;
}

std::vector<cplx> log_quotients(const RationalFunction& g, int k, cplx z) {
  const PointValue gz = g(z);
  if (gz.is_pole() || gz.value() == cplx{}) throw PreconditionError("logarithmic quotients need g(z) != 0, inf");
  const auto t = g.taylor_at(z, k);
  std::vector<cplx> u(static_cast<std::size_t>(k) + 1, cplx{1.0});
  double fact = 1.0;
  for (int j = 1; j <= k; ++j) {
    fact *= j;
    u[static_cast<std::size_t>(j)] = fact * t[static_cast<std::size_t>(j)] / t[0];
  }
  return u;
}

}  // namespace

const ExpansionTable& expansion_coefficients(int k) {
  if (k < 1 || k > kMaxExpansionOrder)
    throw PreconditionError("expansion_coefficients: k must be in [1, " + std::to_string(kMaxExpansionOrder) + "]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const ExpansionTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<const ExpansionTable>(build_table(k));
  return *slot;
}

std::string expansion_to_json(const ExpansionTable& table) {
  nlohmann::ordered_json j;
  j["k"] = table.k;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : table.terms) {
    nlohmann::ordered_json term;
    term["l"] = t.length();
    term["parts"] = t.parts;
    term["coefficient"] = t.coefficient;
    j["terms"].push_back(term);
  }
  return j.dump(2);
}

PointValue correction_term_S(const RationalFunction& g, int k, cplx z) {
  const PointValue gz = g(z);
  if (gz.is_pole()) throw PreconditionError("correction_term_S: z is a pole of g");
  if (gz.value() == cplx{}) return PointValue::pole();
  const auto& table = expansion_coefficients(k);
  const auto u = log_quotients(g, k, z);
  cplx s{};
  for (const auto& term : table.terms) {
    cplx prod = static_cast<double>(term.coefficient);
    for (int j : term.parts) prod *= u[static_cast<std::size_t>(j)];
    s += prod;
  }
  return PointValue(s);
}

IdentityResidual check_identity(const RationalFunction& g, int k, cplx z) {
  const auto u = log_quotients(g, k, z);
  const auto& table = expansion_coefficients(k);
  const cplx lhs = u[static_cast<std::size_t>(k)];
  const cplx log_deriv = g.log_derivative_at(z, k - 1).value();

  cplx s{};
  double s_scale = 0.0;
  for (const auto& term : table.terms) {
    cplx prod = static_cast<double>(term.coefficient);
    for (int j : term.parts) prod *= u[static_cast<std::size_t>(j)];
    s += prod;
    s_scale += std::abs(prod);
  }
  return {std::abs(lhs - log_deriv - s), std::abs(lhs) + std::abs(log_deriv) + s_scale};
}

}  // namespace marty
