#include "nullpoint/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nullpoint {
namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3),
// Bi(0) = sqrt(3) Ai(0), Bi'(0) = -sqrt(3) Ai'(0).
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679840;

// Region boundaries. The Maclaurin series is cancellation-limited beyond
// |x| ~ 3 (the Ai combination loses ~exp(4/3 x^(3/2)) of precision), and the
// asymptotic series cannot reach 1e-12 relative until |x| ~ 8. The band in
// between is covered by Taylor continuation of y'' = x y from whichever side
// is stable for each solution.
constexpr double kSeriesLimit = 3.0;
constexpr double kAsymLimit = 8.5;
constexpr double kMaxStep = 0.25;
constexpr int kTaylorOrder = 28;

AiryQuad maclaurin(double x) {
  const double x3 = x * x * x;
  // f, g: the ascending solutions with f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1.
  double f = 1.0, g = x, fp = 0.0, gp = 1.0;
  double tf = 1.0, tg = x, tfp = 0.0, tgp = 1.0;
  for (int n = 1; n < 80; ++n) {
    const double tn = 3.0 * n;
    tf *= x3 / (tn * (tn - 1.0));
    tg *= x3 / ((tn + 1.0) * tn);
    tgp *= x3 / ((tn - 2.0) * tn);
    tfp = (n == 1) ? 0.5 * x * x : tfp * x3 / ((tn - 3.0) * (tn - 1.0));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    const double incr = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
    const double size = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    if (incr < 1e-18 * size && n > 3) break;
  }
  const double c1 = kAi0;
  const double c2 = -kAip0;
  const double sqrt3 = std::numbers::sqrt3;
  return AiryQuad{c1 * f - c2 * g, sqrt3 * (c1 * f + c2 * g),
                  c1 * fp - c2 * gp, sqrt3 * (c1 * fp + c2 * gp)};
}

// One Taylor step for y'' = x y: advance (y, y') from x0 by h.
void taylor_step(double x0, double h, double& y, double& yp) {
  double c[kTaylorOrder + 1];
  c[0] = y;
  c[1] = yp;
  c[2] = 0.5 * x0 * c[0];
  for (int n = 1; n + 2 <= kTaylorOrder; ++n)
    c[n + 2] = (x0 * c[n] + c[n - 1]) / double((n + 1) * (n + 2));
  double v = c[kTaylorOrder];
  for (int n = kTaylorOrder - 1; n >= 0; --n) v = v * h + c[n];
  double d = kTaylorOrder * c[kTaylorOrder];
  for (int n = kTaylorOrder - 1; n >= 1; --n) d = d * h + n * c[n];
  y = v;
  yp = d;
}

void continue_pair(double from, double to, double& y, double& yp) {
  const int steps = std::max(1, int(std::ceil(std::fabs(to - from) / kMaxStep)));
  const double h = (to - from) / steps;
  for (int i = 0; i < steps; ++i) taylor_step(from + i * h, h, y, yp);
}

// Coefficients u_k, v_k of the large-|x| expansions, generated by recurrence:
// u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k), v_k = u_k (6k+1)/(1-6k).
struct AsymSums {
  double alt_u, alt_v;    // sum (-1)^k u_k / zeta^k and same with v_k
  double plus_u, plus_v;  // unsigned counterparts
  double even_u, odd_u;   // sum (-1)^j u_{2j} / zeta^{2j}, (-1)^j u_{2j+1} / zeta^{2j+1}
  double even_v, odd_v;
};

AsymSums asym_sums(double zeta) {
  AsymSums s{1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0};
  double u = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double sk = 6.0 * k;
    u *= (sk - 5.0) * (sk - 3.0) * (sk - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double pu = u / std::pow(zeta, k);
    if (pu >= prev || !std::isfinite(pu)) break;  // past the optimal truncation
    const double pv = pu * (sk + 1.0) / (1.0 - sk);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s.alt_u += sign * pu;
    s.alt_v += sign * pv;
    s.plus_u += pu;
    s.plus_v += pv;
    if (k % 2 == 0) {
      const double jsign = (k / 2 % 2 == 0) ? 1.0 : -1.0;
      s.even_u += jsign * pu;
      s.even_v += jsign * pv;
    } else {
      const double jsign = ((k - 1) / 2 % 2 == 0) ? 1.0 : -1.0;
      s.odd_u += jsign * pu;
      s.odd_v += jsign * pv;
    }
    prev = pu;
    if (pu < 1e-18) break;
  }
  return s;
}

AiryQuad asymptotic_positive(double x) {
  const double sqrtx = std::sqrt(x);
  const double zeta = (2.0 / 3.0) * x * sqrtx;
  const double x14 = std::sqrt(sqrtx);
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  const AsymSums s = asym_sums(zeta);
  const double em = std::exp(-zeta);
  const double ep = std::exp(zeta);
  return AiryQuad{0.5 * rpi * em / x14 * s.alt_u, rpi * ep / x14 * s.plus_u,
                  -0.5 * rpi * em * x14 * s.alt_v, rpi * ep * x14 * s.plus_v};
}

AiryQuad asymptotic_negative(double x) {
  const double t = -x;
  const double sqrtt = std::sqrt(t);
  const double zeta = (2.0 / 3.0) * t * sqrtt;
  const double t14 = std::sqrt(sqrtt);
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  const AsymSums s = asym_sums(zeta);
  const double c = std::cos(zeta - 0.25 * std::numbers::pi);
  const double sn = std::sin(zeta - 0.25 * std::numbers::pi);
  return AiryQuad{rpi / t14 * (c * s.even_u + sn * s.odd_u),
                  rpi / t14 * (-sn * s.even_u + c * s.odd_u),
                  rpi * t14 * (sn * s.even_v - c * s.odd_v),
                  rpi * t14 * (c * s.even_v + sn * s.odd_v)};
}

}  // namespace

AiryQuad airy_eval(double x) {
  if (!std::isfinite(x)) throw std::domain_error("airy_eval: argument must be finite");
  if (std::fabs(x) > 80.0)
    throw std::domain_error("airy_eval: |x| > 80 would overflow Bi(x)");
  if (std::fabs(x) <= kSeriesLimit) return maclaurin(x);
  if (x >= kAsymLimit) return asymptotic_positive(x);
  if (x <= -kAsymLimit) return asymptotic_negative(x);
  if (x < 0.0) {
    // Oscillatory region: both solutions are bounded, continuation from the
    // series anchor is stable.
    AiryQuad q = maclaurin(-kSeriesLimit);
    continue_pair(-kSeriesLimit, x, q.ai, q.aip);
    continue_pair(-kSeriesLimit, x, q.bi, q.bip);
    return q;
  }
  // 3.5 < x < 8.5. Bi comes from the series (every term positive, no
  // cancellation); Ai is stepped down from the asymptotic anchor, the stable
  // direction for the recessive solution.
  AiryQuad q = maclaurin(x);
  const AiryQuad anchor = asymptotic_positive(kAsymLimit);
  double ai = anchor.ai, aip = anchor.aip;
  continue_pair(kAsymLimit, x, ai, aip);
  q.ai = ai;
  q.aip = aip;
  return q;
}

}  // namespace nullpoint
