#include "region_cases.hpp"

#include <random>

#include "wienerwave/errors.hpp"
#include "wienerwave/regions.hpp"

namespace ww::testing {

namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }
const Rational kInf = Rational::infinity();

ExponentTuple thm1_example() {
  ExponentTuple t;
  t.n = 3;
  t.sigma = R(4, 5);
  t.q_tilde = R(3);
  t.q = R(30);
  t.r = R(9, 2);
  t.r_tilde = R(24, 5);
  return t;
}

ExponentTuple symmetric_dual(const ExponentTuple& t) {
  ExponentTuple s = t;
  s.dual = DualIndices{t.q, t.q_tilde, t.r, t.r_tilde};
  return s;
}

ExponentTuple nlw_example() {
  ExponentTuple t;
  t.n = 3;
  t.q_tilde = R(5);
  t.q = R(8);
  t.r = R(10, 3);
  t.r_tilde = R(10, 3);
  return t;
}

ExponentTuple low_regularity(const Rational& r) {
  ExponentTuple t;
  t.n = 3;
  t.sigma = R(1, 2);
  t.q_tilde = R(4);
  t.q = R(7);
  t.r = r;
  t.r_tilde = r;
  return t;
}

template <class Fn>
bool throws_admissibility(Fn&& fn) {
  try {
    (void)fn();
  } catch (const AdmissibilityError&) {
    return true;
  }
  return false;
}

}  // namespace

std::vector<RegionCase> region_cases() {
  std::vector<RegionCase> c;
  c.push_back({"wave-admissible L4 point (3, 4, 4, 1/2)", [] { return is_wave_admissible(3, R(4), R(4), R(1, 2)); }});
  c.push_back({"energy endpoint (3, inf, 2, 0)", [] { return is_wave_admissible(3, kInf, R(2), R(0)); }});
  c.push_back({"L4 point fails scaling at sigma 0", [] { return !is_wave_admissible(3, R(4), R(4), R(0)); }});
  c.push_back({"Keel-Tao endpoint excluded in n = 3 (q = 2, r = inf)",
               [] { return !is_wave_admissible(3, R(2), kInf, R(1)); }});
  c.push_back({"thm1 example tuple", [] { return thm1_admissible(thm1_example()); }});
  c.push_back({"thm1 r_tilde = 5 on the open bound", [] {
                 auto t = thm1_example();
                 t.r_tilde = R(5);
                 return !thm1_admissible(t);
               }});
  c.push_back({"thm1 rejects r > r_tilde", [] {
                 auto t = thm1_example();
                 t.r = R(5);
                 t.r_tilde = R(9, 2);
                 return !thm1_admissible(t);
               }});
  c.push_back({"thm1 rejects q_tilde >= q", [] {
                 auto t = thm1_example();
                 t.q_tilde = R(30);
                 return !thm1_admissible(t);
               }});
  c.push_back({"thm1 rejects sigma at (n-1)/2", [] {
                 auto t = thm1_example();
                 t.sigma = R(1);
                 return !thm1_admissible(t);
               }});
  c.push_back({"thm2 symmetric dual at gamma 8/5", [] { return thm2_admissible(symmetric_dual(thm1_example()), R(8, 5)); }});
  c.push_back({"thm2 rejects q = q1 = inf", [] {
                 auto t = symmetric_dual(thm1_example());
                 t.q = kInf;
                 t.dual->q1 = kInf;
                 return !thm2_admissible(t, R(8, 5));
               }});
  c.push_back({"thm2 rejects gamma = (n+1)/2", [] { return !thm2_admissible(symmetric_dual(thm1_example()), R(2)); }});
  c.push_back({"propfix (8/5, 9/2, 24/5)", [] { return propfix_admissible(3, R(8, 5), R(9, 2), R(24, 5)); }});
  c.push_back({"propfix rejects r = 4 < 30/7", [] { return !propfix_admissible(3, R(8, 5), R(4), R(24, 5)); }});
  c.push_back({"propfix rejects r > r_tilde", [] { return !propfix_admissible(3, R(8, 5), R(24, 5), R(9, 2)); }});
  c.push_back({"propfix upper branch (21/10, 10, 20)", [] { return propfix_admissible(3, R(21, 10), R(10), R(20)); }});
  c.push_back({"decay exponents (-17/30, -1/15)", [] {
                 const auto d = decay_exponents(3, R(8, 5), R(9, 2), R(24, 5));
                 return d.omega_small == R(-17, 30) && d.omega_large == R(-1, 15);
               }});
  c.push_back({"decay exponents reject inadmissible input",
               [] { return throws_admissibility([] { return decay_exponents(3, R(8, 5), R(4), R(24, 5)); }); }});
  c.push_back({"case exponents (51/25, -2/5, -24/25, 1/8)", [] {
                 const auto e = case_exponents(3, R(8, 5), R(9, 2), R(24, 5));
                 return e.alpha == R(51, 25) && e.lambda == R(-2, 5) && e.beta == R(-24, 25) && e.kappa == R(1, 8);
               }});
  c.push_back({"alpha > 0 iff r_tilde < 2n/(n-gamma-1)", [] {
                 const auto a = case_exponents(3, R(21, 10), R(10), R(20)).alpha;  // bound 6/(-1/10): none
                 const auto b = case_exponents(3, R(8, 5), R(9, 2), R(15)).alpha;  // bound 15
                 const auto d = case_exponents(3, R(8, 5), R(9, 2), R(14)).alpha;
                 return a > R(0) && b == R(0) && d > R(0);
               }});
  c.push_back({"beta + 1 > 0 iff r_tilde < 4/(n-2gamma+1)", [] {
                 const auto at = case_exponents(3, R(8, 5), R(9, 2), R(5)).beta;
                 const auto in = case_exponents(3, R(8, 5), R(9, 2), R(24, 5)).beta;
                 return at + R(1) == R(0) && in + R(1) > R(0);
               }});
  c.push_back({"k_max(3, 1/2) = 3", [] { return k_max(3, R(1, 2)) == R(3); }});
  c.push_back({"k_max(3, 0) = 2", [] { return k_max(3, R(0)) == R(2); }});
  c.push_back({"k_max branches agree at 1/2 for n = 3..6", [] {
                 for (int n = 3; n <= 6; ++n) {
                   const Rational N(n), s = R(1, 2);
                   const Rational low = R(1) + R(4) / (N + R(1) - R(4) * s);
                   const Rational high = R(1) + R(4) / (N - R(2) * s);
                   if (low != high || k_max(n, s) != R(1) + R(4) / (N - R(1))) return false;
                 }
                 return true;
               }});
  c.push_back({"k_max(3, 19/40) = 61/21", [] { return k_max(3, R(19, 40)) == R(61, 21); }});
  c.push_back({"ftc branch bounds meet at gamma = n/2 + 1/(n-1)", [] {
                 for (int n = 3; n <= 7; ++n) {
                   const Rational N(n), g = N / R(2) + R(1) / (N - R(1));
                   if ((N - R(2) * g + R(1)) / R(4) != (N - g - R(1)) / (R(2) * N)) return false;
                 }
                 return true;
               }});
  c.push_back({"propfix verdict continuous across the ftc branch point (n = 4)", [] {
                 const Rational g = R(7, 3), below = g - R(1, 1000), above = g + R(1, 1000);
                 // r_tilde = 11 sits below the common bound 12 at the branch point.
                 return propfix_admissible(4, below, R(11), R(11)) == propfix_admissible(4, above, R(11), R(11)) &&
                        propfix_admissible(4, g, R(11), R(11));
               }});
  c.push_back({"corollary (1/2, 4, 7, 7/2, 7/2)", [] { return corollary_admissible(R(1, 2), low_regularity(R(7, 2))); }});
  c.push_back({"corollary rejects r = 4 (scaling)", [] { return !corollary_admissible(R(1, 2), low_regularity(R(4))); }});
  c.push_back({"nlw tuple admissible at k = 5/2", [] { return nlw_admissible(nlw_example(), R(5, 2)); }});
  c.push_back({"nlw implied sigma 19/40", [] { return implied_sigma(nlw_example()) == R(19, 40); }});
  c.push_back({"nlw tuple rejected at k = 3", [] { return !nlw_admissible(nlw_example(), R(3)); }});
  c.push_back({"nlw tuple rejected at k = k_max", [] { return !nlw_admissible(nlw_example(), R(61, 21)); }});
  c.push_back({"dual indices at the midpoint (1/4, 1/4, 23/80, 9/80; q0_tilde 4)", [] {
                 const auto d = nlw_dual_indices(nlw_example(), R(5, 2));
                 return d.sigma1 == R(21, 40) && d.dual.r1_tilde == R(4) && d.dual.q1_tilde == R(4) &&
                        d.dual.r1 == R(80, 23) && d.dual.q1 == R(80, 9) && d.q0_tilde == R(4);
               }});
  c.push_back({"dual pair satisfies the inhomogeneous corollary", [] {
                 const auto d = nlw_dual_indices(nlw_example(), R(5, 2));
                 ExponentTuple t = nlw_example();
                 t.dual = d.dual;
                 ExponentTuple alone;
                 alone.q = d.dual.q1;
                 alone.q_tilde = d.dual.q1_tilde;
                 alone.r = d.dual.r1;
                 alone.r_tilde = d.dual.r1_tilde;
                 return corollary_admissible(d.sigma1, alone) && corollary_admissible(d.sigma1, t);
               }});
  c.push_back({"life span (1, 1, 3, 4) -> M 2, T 1/4096", [] {
                 const auto p = life_span(1.0, 1.0, R(3), R(4));
                 return p.M == 2.0 && p.T == 1.0 / 4096.0;
               }});
  c.push_back({"life span capped at 0.99 for tiny data", [] { return life_span(1.0, 1e-9, R(3), R(4)).T == 0.99; }});
  c.push_back({"conjugates 3 -> 3/2, 1 -> inf, inf -> 1", [] {
                 return conjugate(R(3)) == R(3, 2) && conjugate(R(1)).is_infinite() && conjugate(kInf) == R(1);
               }});
  c.push_back({"propfix centroid gamma 21/10 -> (10, 20)", [] {
                 const auto p = propfix_centroid(3, R(21, 10));
                 return p.r == R(10) && p.r_tilde == R(20);
               }});
  c.push_back({"propfix centroid gamma 8/5 -> (9/2, 90/19)", [] {
                 const auto p = propfix_centroid(3, R(8, 5));
                 return p.r == R(9, 2) && p.r_tilde == R(90, 19);
               }});
  c.push_back({"thm1 integrability (q_tilde/2) omega_small > -1", [] {
                 const auto t = thm1_example();
                 const auto d = decay_exponents(3, R(2) * t.sigma, t.r, t.r_tilde);
                 return t.q_tilde / R(2) * d.omega_small > R(-1);
               }});
  c.push_back({"omega_large < 0 and omega_small <= omega_large on the sampled region", [] {
                 int seen = 0;
                 for (const Rational& g : {R(8, 5), R(17, 10), R(21, 10), R(23, 10)})
                   for (const auto& s : sample_propfix_region(3, g, 120)) {
                     if (!s.admissible) continue;
                     ++seen;
                     const auto d = decay_exponents(3, g, s.inv_r.reciprocal(), s.inv_r_tilde.reciprocal());
                     if (!(d.omega_large < R(0)) || d.omega_large < d.omega_small)
                       return false;
                   }
                 return seen >= 100;
               }});
  return c;
}

int scaling_identity_failures(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> nd(3, 6), num(1, 59);
  int failures = 0, made = 0;
  while (made < count) {
    const int n = nd(rng);
    const Rational N(n);
    const Rational inv_r = R(num(rng), 120);
    const Rational inv_q = R(num(rng), 120);
    // Choose sigma so that 1/q + n/r = n/2 - sigma holds.
    const Rational sigma = N / R(2) - inv_q - N * inv_r;
    ExponentTuple t;
    t.n = n;
    t.sigma = sigma;
    t.q = inv_q.reciprocal();
    t.r = inv_r.reciprocal();
    ++made;
    if (R(2) / t.q != N - R(2) * sigma - R(2) * N / t.r) ++failures;
  }
  return failures;
}

}  // namespace ww::testing
