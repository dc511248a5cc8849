#include "wienerwave/regions.hpp"

#include <cmath>
#include <sstream>

#include "wienerwave/errors.hpp"

namespace ww {

namespace {

Rational inv(const Rational& x) { return x.reciprocal(); }

const Rational kZero(0);
const Rational kOne(1);
const Rational kHalf(1, 2);

void check_exponent(const Rational& p, const char* name) {
  if (p < kOne) throw DomainError(std::string("Lebesgue exponent ") + name + " must lie in [1, inf]");
}

void require_n(int n, int min_n, const char* op) {
  if (n < min_n) throw DomainError(std::string(op) + ": dimension too small");
}

}  // namespace

void validate(const ExponentTuple& t) {
  require_n(t.n, 2, "validate");
  check_exponent(t.q, "q");
  check_exponent(t.q_tilde, "q_tilde");
  check_exponent(t.r, "r");
  check_exponent(t.r_tilde, "r_tilde");
  if (t.sigma.is_infinite() || t.gamma.is_infinite()) throw DomainError("sigma and gamma must be finite");
  if (t.dual) {
    check_exponent(t.dual->q1, "q1");
    check_exponent(t.dual->q1_tilde, "q1_tilde");
    check_exponent(t.dual->r1, "r1");
    check_exponent(t.dual->r1_tilde, "r1_tilde");
  }
}

Rational conjugate(const Rational& p) {
  check_exponent(p, "p");
  return inv(kOne - inv(p));
}

bool is_wave_admissible(int n, const Rational& q, const Rational& r, const Rational& sigma) {
  require_n(n, 2, "is_wave_admissible");
  check_exponent(q, "q");
  check_exponent(r, "r");
  const Rational nm1(n - 1);
  return q >= Rational(2) && r >= Rational(2) && r.is_finite() &&
         Rational(2) * inv(q) + nm1 * inv(r) <= nm1 / 2 &&
         inv(q) + Rational(n) * inv(r) == Rational(n, 2) - sigma;
}

bool thm1_admissible(const ExponentTuple& t) {
  validate(t);
  require_n(t.n, 3, "thm1_admissible");
  const Rational n(t.n);
  const Rational& s = t.sigma;
  if (!(n / 4 < s && s < (n - 1) / 2)) return false;
  if (!(t.q_tilde >= Rational(2) && t.q_tilde < t.q && t.q.is_finite())) return false;
  if (!(inv(t.r) < (n - 2 * s) / (2 * n))) return false;
  if (!(inv(t.r_tilde) <= inv(t.r))) return false;
  if (s < n / 4 + inv(2 * (n - 1))) {
    if (!(inv(t.r_tilde) > (n - 4 * s + 1) / 4)) return false;
  } else {
    if (!(inv(t.r_tilde) > (n - 2 * s - 1) / (2 * n))) return false;
  }
  if (!(inv(t.q_tilde) + (n - 1) * inv(t.r_tilde) > n / 2 - s)) return false;
  return inv(t.q) + n * inv(t.r) == n / 2 - s;
}

bool thm2_admissible(const ExponentTuple& t, const Rational& gamma) {
  validate(t);
  require_n(t.n, 3, "thm2_admissible");
  if (!t.dual) throw DomainError("thm2_admissible: dual indices required");
  const DualIndices& d = *t.dual;
  const Rational n(t.n);
  const Rational& g = gamma;
  const Rational mid = (n + 1) / 2;
  if (!((n / 2 < g && g < mid) || (mid < g && g < n - 1))) return false;
  const Rational sq = inv(t.q) + inv(d.q1);
  const Rational sqt = inv(t.q_tilde) + inv(d.q1_tilde);
  const Rational sr = inv(t.r) + inv(d.r1);
  const Rational srt = inv(t.r_tilde) + inv(d.r1_tilde);
  if (!(kZero < sq && sq < sqt && sqt <= kOne)) return false;
  const Rational lower = max((n - 2 * g + 1) / 2, (n - g - 1) / n);
  if (!(lower < srt && srt <= sr && sr < (n - g) / n)) return false;
  if (!(sqt + (n - 1) * srt > n - g)) return false;
  return sq + n * sr == n - g;
}

bool propfix_admissible(int n_, const Rational& gamma, const Rational& r, const Rational& r_tilde) {
  require_n(n_, 3, "propfix_admissible");
  check_exponent(r, "r");
  check_exponent(r_tilde, "r_tilde");
  const Rational n(n_);
  const Rational& g = gamma;
  if (!(g < n)) return false;
  if (!(inv(r) < (n - g) / (2 * n))) return false;
  if (!(inv(r_tilde) <= inv(r))) return false;
  if (g < n / 2 + inv(n - 1)) return inv(r_tilde) > (n - 2 * g + 1) / 4;
  return inv(r_tilde) > (n - g - 1) / (2 * n);
}

DecayExponents decay_exponents(int n_, const Rational& gamma, const Rational& r, const Rational& r_tilde) {
  if (!propfix_admissible(n_, gamma, r, r_tilde)) throw AdmissibilityError("decay_exponents: (r, r_tilde) not admissible");
  const Rational n(n_);
  return {-n + gamma + 2 * (n - 1) * inv(r_tilde), -n + gamma + 2 * n * inv(r)};
}

CaseExponents case_exponents(int n_, const Rational& gamma, const Rational& r, const Rational& r_tilde) {
  require_n(n_, 2, "case_exponents");
  check_exponent(r, "r");
  check_exponent(r_tilde, "r_tilde");
  if (r_tilde.is_infinite() || r.is_infinite()) throw DomainError("case_exponents: r and r_tilde must be finite");
  const Rational n(n_);
  const Rational half = r_tilde / 2;
  CaseExponents c;
  c.alpha = half * (-n + gamma + 1) + n;
  c.lambda = -half * (n - 1) / 2 + n - 1;
  c.beta = half * (-n / 2 - kHalf + gamma);
  c.kappa = -(r / r_tilde) * (n - 1) + n - 1;
  return c;
}

Rational k_max(int n_, const Rational& sigma) {
  require_n(n_, 2, "k_max");
  const Rational n(n_);
  if (sigma < kZero) throw DomainError("k_max: sigma must be nonnegative");
  if (sigma >= n / 2) throw DomainError("k_max: sigma must be below n/2");
  if (sigma <= kHalf) return kOne + Rational(4) / (n + 1 - 4 * sigma);
  return kOne + Rational(4) / (n - 2 * sigma);
}

bool corollary_admissible(const Rational& sigma, const ExponentTuple& t) {
  validate(t);
  if (t.n != 3) throw DomainError("corollary_admissible: n must be 3");
  if (!t.dual) {
    const Rational& s = sigma;
    if (!(kZero < s && s < kOne)) return false;
    if (!(kZero < inv(t.q) && inv(t.q) < inv(t.q_tilde) && inv(t.q_tilde) <= s / 2)) return false;
    if (!((kOne - s) / 2 < inv(t.r_tilde) && inv(t.r_tilde) <= inv(t.r) && inv(t.r) < (3 - 2 * s) / 6)) return false;
    if (!(inv(t.q_tilde) + 2 * inv(t.r_tilde) > kOne - s / 2)) return false;
    return inv(t.q) + 3 * inv(t.r) == Rational(3, 2) - s;
  }
  const DualIndices& d = *t.dual;
  const Rational sq = inv(t.q) + inv(d.q1);
  const Rational sqt = inv(t.q_tilde) + inv(d.q1_tilde);
  const Rational sr = inv(t.r) + inv(d.r1);
  const Rational srt = inv(t.r_tilde) + inv(d.r1_tilde);
  if (!(kZero < sq && sq < sqt && sqt <= kHalf)) return false;
  if (!(kHalf < srt && srt <= sr && sr < Rational(2, 3))) return false;
  if (!(sqt + 2 * srt > Rational(3, 2))) return false;
  return sq + 3 * sr == Rational(2);
}

Rational implied_sigma(const ExponentTuple& t) { return Rational(3, 2) - inv(t.q) - 3 * inv(t.r); }

bool nlw_admissible(const ExponentTuple& t, const Rational& k) {
  validate(t);
  if (t.n != 3) throw DomainError("nlw_admissible: n must be 3");
  if (!(k > kOne) || k.is_infinite()) return false;
  const Rational iq = inv(t.q), iqt = inv(t.q_tilde), ir = inv(t.r), irt = inv(t.r_tilde);
  if (!(kZero < iq && iq < iqt && iqt <= Rational(1, 4))) return false;
  if (!(Rational(1, 4) < irt && irt <= ir && ir < kHalf)) return false;
  const Rational lhs = iq + 3 * ir;
  if (!(kOne <= lhs && lhs < min(Rational(3, 2) - 2 * iqt, 2 * iqt + 4 * irt - kHalf))) return false;
  const Rational km1 = k - 1;
  if (!(iqt < inv(km1) && iq < inv(km1))) return false;
  if (!(inv(3 * km1) < irt && irt < inv(2 * km1))) return false;
  if (!(inv(3 * km1) < ir)) return false;
  if (!(iqt + 2 * irt < Rational(3) / (2 * km1))) return false;
  const Rational s = implied_sigma(t);
  if (s < kZero) return false;
  return k < k_max(3, s);
}

NonlinearDual nlw_dual_indices(const ExponentTuple& t, const Rational& k) {
  if (!nlw_admissible(t, k)) throw AdmissibilityError("nlw_dual_indices: tuple not admissible for this k");
  const Rational iq = inv(t.q), iqt = inv(t.q_tilde), ir = inv(t.r), irt = inv(t.r_tilde);
  NonlinearDual out;
  const Rational s1 = kOne - implied_sigma(t);
  out.sigma1 = s1;

  const Rational irt1 = kOne - k * irt;
  if (!((kOne - s1) / 2 < irt1 && irt1 < (3 - 2 * s1) / 6))
    throw AdmissibilityError("nlw_dual_indices: no feasible r1_tilde");

  const Rational qt_lo = max(kZero, kOne - s1 / 2 - 2 * irt1);
  const Rational qt_hi = min(min(s1 / 2, kOne - k * iqt), kHalf - iqt);
  if (!(qt_lo < qt_hi)) throw AdmissibilityError("nlw_dual_indices: no feasible q1_tilde");
  const Rational iqt1 = (qt_lo + qt_hi) / 2;

  // 1/q1 = 3/2 - sigma1 - 3/r1 ties the remaining pair together.
  const Rational c = Rational(3, 2) - s1;
  Rational r_lo = max(max(irt1, kOne - k * ir), (c - iqt1) / 3);
  r_lo = max(r_lo, irt + irt1 - ir);
  r_lo = max(r_lo, (c - (kOne - k * iq)) / 3);
  Rational r_hi = min((3 - 2 * s1) / 6, c / 3);
  r_hi = min(r_hi, Rational(2, 3) - ir);
  if (!(r_lo < r_hi)) throw AdmissibilityError("nlw_dual_indices: no feasible r1");
  const Rational ir1 = (r_lo + r_hi) / 2;
  const Rational iq1 = c - 3 * ir1;

  out.dual = DualIndices{inv(iq1), inv(iqt1), inv(ir1), inv(irt1)};
  const Rational iq0t = kOne - k * iqt - iqt1;
  if (!(iq0t > kZero)) throw AdmissibilityError("nlw_dual_indices: no positive 1/q0_tilde");
  out.q0_tilde = inv(iq0t);

  ExponentTuple dual_alone;
  dual_alone.n = 3;
  dual_alone.q = out.dual.q1;
  dual_alone.q_tilde = out.dual.q1_tilde;
  dual_alone.r = out.dual.r1;
  dual_alone.r_tilde = out.dual.r1_tilde;
  ExponentTuple combined = t;
  combined.dual = out.dual;
  if (!corollary_admissible(s1, dual_alone) || !corollary_admissible(s1, combined))
    throw AdmissibilityError("nlw_dual_indices: midpoint construction left the admissible set");
  return out;
}

ContractionPlan life_span(double C, double data_norm, const Rational& k, const Rational& q0_tilde) {
  if (!(C > 0.0) || !(data_norm > 0.0)) throw DomainError("life_span: C and data_norm must be positive");
  if (!(k > kOne) || k.is_infinite()) throw DomainError("life_span: k must exceed 1");
  if (!(q0_tilde > kZero) || q0_tilde.is_infinite()) throw DomainError("life_span: q0_tilde must be finite positive");
  ContractionPlan p;
  p.k = k;
  p.q0_tilde = q0_tilde;
  p.C = C;
  p.M = 2.0 * C * data_norm;
  const double base = 1.0 / (2.0 * C * std::pow(p.M, k.to_double() - 1.0));
  p.T = std::min(0.99, std::pow(base, q0_tilde.to_double()));
  return p;
}

std::vector<RegionSample> sample_propfix_region(int n, const Rational& gamma, int denominator) {
  if (denominator < 2) throw DomainError("sample_propfix_region: denominator must be at least 2");
  std::vector<RegionSample> out;
  const Rational den(denominator);
  for (int i = 0; 2 * i <= denominator; ++i)
    for (int j = 0; 2 * j <= denominator; ++j) {
      RegionSample s{Rational(i) / den, Rational(j) / den, false};
      s.admissible = propfix_admissible(n, gamma, inv(s.inv_r), inv(s.inv_r_tilde));
      out.push_back(s);
    }
  return out;
}

ExponentPair propfix_centroid(int n_, const Rational& gamma) {
  require_n(n_, 3, "propfix_centroid");
  const Rational n(n_);
  if (!(gamma < n) || !(gamma > kZero)) throw AdmissibilityError("propfix_centroid: gamma outside (0, n)");
  const Rational a = (n - gamma) / (2 * n);
  Rational b = gamma < n / 2 + inv(n - 1) ? (n - 2 * gamma + 1) / 4 : (n - gamma - 1) / (2 * n);
  b = max(b, kZero);
  if (!(b < a)) throw AdmissibilityError("propfix_centroid: empty region");
  const Rational x = (b + 2 * a) / 3;
  const Rational y = (2 * b + a) / 3;
  return {inv(x), inv(y)};
}

std::vector<std::pair<Rational, Rational>> sample_k_max_curve(int n, int denominator) {
  if (denominator < 1) throw DomainError("sample_k_max_curve: denominator must be positive");
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 0;; ++i) {
    const Rational s = Rational(i, denominator);
    if (s >= Rational(n, 2)) break;
    out.emplace_back(s, k_max(n, s));
  }
  return out;
}

std::string region_csv(const std::vector<RegionSample>& samples) {
  std::ostringstream os;
  os << "inv_r,inv_r_tilde,admissible\n";
  for (const auto& s : samples) os << s.inv_r << ',' << s.inv_r_tilde << ',' << (s.admissible ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace ww
