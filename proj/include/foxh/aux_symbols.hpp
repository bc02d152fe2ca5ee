#pragma once

// Auxiliary multipliers used by the factorization chains. Each builder returns
// the exact gamma-quotient/prefactor structure; build_aux_symbol additionally
// checks the case label and the parameter inequalities of the host theorem.

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "foxh/gamma_symbol.hpp"
#include "foxh/hparams.hpp"

namespace foxh {

enum class AuxKind {
  h0,         // case 1
  h1,         // case 2, m > 0, k >= 1
  h2,         // case 2, n > 0, 0 < k <= 1
  h3,         // case 3
  h3_mirror,  // case 4
  h4,         // case 5, Re omega >= 0
  h5,         // case 5, Re omega < 0
  h6,         // case 6, Re omega >= 0
  h7,         // case 6, Re omega < 0
  h6_mirror,  // case 7, Re omega >= 0
  h7_mirror,  // case 7, Re omega < 0
  h8,         // case 8
  h9          // case 9
};

inline const char* to_string(AuxKind k) {
  switch (k) {
    case AuxKind::h0: return "H0";
    case AuxKind::h1: return "H1";
    case AuxKind::h2: return "H2";
    case AuxKind::h3: return "H3";
    case AuxKind::h3_mirror: return "H3_mirror";
    case AuxKind::h4: return "H4";
    case AuxKind::h5: return "H5";
    case AuxKind::h6: return "H6";
    case AuxKind::h7: return "H7";
    case AuxKind::h6_mirror: return "H6_mirror";
    case AuxKind::h7_mirror: return "H7_mirror";
    case AuxKind::h8: return "H8";
    case AuxKind::h9: return "H9";
  }
  return "?";
}

struct ChainParams {
  double k = 1.0;
  cplx eta = 0.0, zeta = 0.0, omega = 0.0;
  bool has_k = false, has_eta = false, has_zeta = false, has_omega = false;
  std::string branch;
};

namespace aux {

// delta^{-s}
inline GammaSymbol delta_power(const Invariants& inv) { return GammaSymbol::exponential(0.0, -inv.log_delta); }

inline GammaSymbol h0(const GammaSymbol& H, const Invariants& inv) { return delta_power(inv) * H; }

inline GammaSymbol h1(const GammaSymbol& H, const Invariants& inv, double k) {
  const double a = inv.alpha_low;
  return GammaSymbol::gamma(-a / k - inv.mu, 1.0 / k) * GammaSymbol::inverse_gamma(-a / k, 1.0 / k) * H;
}

inline GammaSymbol h2(const GammaSymbol& H, const Invariants& inv, double k) {
  const double b = inv.beta_high;
  return GammaSymbol::gamma(b / k - inv.mu, -1.0 / k) * GammaSymbol::inverse_gamma(b / k, -1.0 / k) * H;
}

// delta^{s-1} (a1*)^{(1-s)Delta + mu} Gamma(-mu + a1*[s-1-alpha]) / Gamma(a1*[1-alpha-s]) H(1-s)
inline GammaSymbol h3(const GammaSymbol& H, const Invariants& inv) {
  const double a1 = inv.a1_star, a = inv.alpha_low, D = inv.delta_cap;
  return GammaSymbol::exponential(-inv.log_delta, inv.log_delta) * GammaSymbol::power(a1, D + inv.mu, -D) *
         GammaSymbol::gamma(-inv.mu - a1 * (1.0 + a), a1) * GammaSymbol::inverse_gamma(a1 * (1.0 - a), -a1) *
         H.reflect();
}

// Same structure with beta in place of alpha and |a1*| as power base.
inline GammaSymbol h3_mirror(const GammaSymbol& H, const Invariants& inv) {
  const double a1 = inv.a1_star, b = inv.beta_high, D = inv.delta_cap;
  return GammaSymbol::exponential(-inv.log_delta, inv.log_delta) *
         GammaSymbol::power(std::abs(a1), D + inv.mu, -D) * GammaSymbol::gamma(-inv.mu - a1 * (1.0 + b), a1) *
         GammaSymbol::inverse_gamma(a1 * (1.0 - b), -a1) * H.reflect();
}

inline cplx omega_case5(const Invariants& inv) {
  return inv.mu + inv.a1_star * inv.alpha_low - inv.a2_star * inv.beta_high + 1.0;
}
inline cplx omega_case6(const Invariants& inv) { return inv.mu + inv.a1_star * inv.alpha_low + 0.5; }
inline cplx omega_case7(const Invariants& inv) { return inv.mu - inv.a2_star * inv.beta_high + 0.5; }

// (a1*)^{a1*(s-alpha)-1} (a2*)^{a2*(beta-s)+omega-1} / [Gamma(a1*[s-alpha]) Gamma(a2*[beta-s]+omega)] delta^{-s} H
inline GammaSymbol h4(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a1 = inv.a1_star, a2 = inv.a2_star, a = inv.alpha_low, b = inv.beta_high;
  return GammaSymbol::power(a1, -a1 * a - 1.0, a1) * GammaSymbol::power(a2, a2 * b + w - 1.0, -a2) *
         GammaSymbol::inverse_gamma(-a1 * a, a1) * GammaSymbol::inverse_gamma(a2 * b + w, -a2) *
         delta_power(inv) * H;
}

// (a1*)^{a1*(s-alpha)-1} (a2*)^{a2*(beta-s)-1} Gamma(a1*[s-alpha]-omega)
//   / [Gamma^2(a1*[s-alpha]) Gamma(a2*[beta-s])] delta^{-s} H
inline GammaSymbol h5(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a1 = inv.a1_star, a2 = inv.a2_star, a = inv.alpha_low, b = inv.beta_high;
  return GammaSymbol::power(a1, -a1 * a - 1.0, a1) * GammaSymbol::power(a2, a2 * b - 1.0, -a2) *
         GammaSymbol::gamma(-a1 * a - w, a1) * GammaSymbol::inverse_gamma(-a1 * a, a1) *
         GammaSymbol::inverse_gamma(-a1 * a, a1) * GammaSymbol::inverse_gamma(a2 * b, -a2) * delta_power(inv) * H;
}

// (a1*)^{a1*(s-alpha)+omega-1} / Gamma(a1*[s-alpha]+omega) delta^{-s} H
inline GammaSymbol h6(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a1 = inv.a1_star, a = inv.alpha_low;
  return GammaSymbol::power(a1, -a1 * a + w - 1.0, a1) * GammaSymbol::inverse_gamma(-a1 * a + w, a1) *
         delta_power(inv) * H;
}

// (a1*)^{a1*(s-alpha)-1} Gamma(a1*[s-alpha]-omega) / Gamma^2(a1*[s-alpha]) delta^{-s} H
inline GammaSymbol h7(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a1 = inv.a1_star, a = inv.alpha_low;
  return GammaSymbol::power(a1, -a1 * a - 1.0, a1) * GammaSymbol::gamma(-a1 * a - w, a1) *
         GammaSymbol::inverse_gamma(-a1 * a, a1) * GammaSymbol::inverse_gamma(-a1 * a, a1) * delta_power(inv) * H;
}

// (a2*)^{a2*(beta-s)+omega-1} / Gamma(a2*[beta-s]+omega) delta^{-s} H
inline GammaSymbol h6_mirror(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a2 = inv.a2_star, b = inv.beta_high;
  return GammaSymbol::power(a2, a2 * b + w - 1.0, -a2) * GammaSymbol::inverse_gamma(a2 * b + w, -a2) *
         delta_power(inv) * H;
}

// (a2*)^{a2*(beta-s)-1} Gamma(a2*[beta-s]-omega) / Gamma^2(a2*[beta-s]) delta^{-s} H
inline GammaSymbol h7_mirror(const GammaSymbol& H, const Invariants& inv, cplx w) {
  const double a2 = inv.a2_star, b = inv.beta_high;
  return GammaSymbol::power(a2, a2 * b - 1.0, -a2) * GammaSymbol::gamma(a2 * b - w, -a2) *
         GammaSymbol::inverse_gamma(a2 * b, -a2) * GammaSymbol::inverse_gamma(a2 * b, -a2) * delta_power(inv) * H;
}

// (a*)^{a*(s+eta)-1} |a2*|^{-2 a2* s - omega} Gamma(a2*[s+zeta]+omega)
//   / [Gamma(a*[s+eta]) Gamma(a2*[zeta-s])] delta^{-s} H,   omega = a* eta - mu - 1/2
inline GammaSymbol h8(const GammaSymbol& H, const Invariants& inv, cplx eta, cplx zeta) {
  const double as = inv.a_star, a2 = inv.a2_star;
  const cplx w = as * eta - inv.mu - 0.5;
  return GammaSymbol::power(as, as * eta - 1.0, as) * GammaSymbol::power(std::abs(a2), -w, -2.0 * a2) *
         GammaSymbol::gamma(a2 * zeta + w, a2) * GammaSymbol::inverse_gamma(as * eta, as) *
         GammaSymbol::inverse_gamma(a2 * zeta, -a2) * delta_power(inv) * H;
}

// (a*)^{a*(1-s+eta)-1} |a1*|^{2 a1* s - 2 a1* - omega} Gamma(a1*[zeta-s+1]+omega)
//   / [Gamma(a*[1-s+eta]) Gamma(a1*[zeta+s-1])] delta^{-s} H,   omega = a* eta - Delta - mu - 1/2
inline GammaSymbol h9(const GammaSymbol& H, const Invariants& inv, cplx eta, cplx zeta) {
  const double as = inv.a_star, a1 = inv.a1_star;
  const cplx w = as * eta - inv.delta_cap - inv.mu - 0.5;
  return GammaSymbol::power(as, as * (1.0 + eta) - 1.0, -as) *
         GammaSymbol::power(std::abs(a1), -2.0 * a1 - w, 2.0 * a1) * GammaSymbol::gamma(a1 * (zeta + 1.0) + w, -a1) *
         GammaSymbol::inverse_gamma(as * (1.0 + eta), -as) * GammaSymbol::inverse_gamma(a1 * (zeta - 1.0), a1) *
         delta_power(inv) * H;
}

}  // namespace aux

namespace detail {
[[noreturn]] inline void constraint(const std::string& code, const std::string& what) {
  fail(ErrorKind::hypothesis_failure, code, what);
}
inline void require_case(const Invariants& inv, int c, AuxKind k) {
  if (!inv.case_label || *inv.case_label != c)
    constraint("case_mismatch", std::string(to_string(k)) + " belongs to case " + std::to_string(c));
}
}  // namespace detail

// Validated construction. `space` is needed for the inequalities that involve
// (nu, r); the chain parameters not applicable to `kind` are ignored.
inline GammaSymbol build_aux_symbol(AuxKind kind, const GammaSymbol& H, const Invariants& inv,
                                    const ChainParams& cp, const SpaceSpec& space) {
  using detail::constraint;
  const double nu = space.nu, g = space.gamma_r();
  switch (kind) {
    case AuxKind::h0:
      detail::require_case(inv, 1, kind);
      return aux::h0(H, inv);
    case AuxKind::h1:
      detail::require_case(inv, 2, kind);
      if (inv.m == 0) constraint("m_zero", "H1 needs m > 0");
      if (!(cp.k >= 1.0)) constraint("k_range", "H1 needs k >= 1");
      return aux::h1(H, inv, cp.k);
    case AuxKind::h2:
      detail::require_case(inv, 2, kind);
      if (inv.n == 0) constraint("n_zero", "H2 needs n > 0");
      if (!(cp.k > 0.0 && cp.k <= 1.0)) constraint("k_range", "H2 needs 0 < k <= 1");
      return aux::h2(H, inv, cp.k);
    case AuxKind::h3:
      detail::require_case(inv, 3, kind);
      if (!std::isfinite(inv.alpha_low)) constraint("alpha_infinite", "H3 needs alpha > -inf (m > 0)");
      return aux::h3(H, inv);
    case AuxKind::h3_mirror:
      detail::require_case(inv, 4, kind);
      if (!std::isfinite(inv.beta_high)) constraint("beta_infinite", "H3_mirror needs beta < inf (n > 0)");
      return aux::h3_mirror(H, inv);
    case AuxKind::h4:
    case AuxKind::h5: {
      detail::require_case(inv, 5, kind);
      if (!std::isfinite(inv.alpha_low) || !std::isfinite(inv.beta_high))
        constraint("strip_unbounded", "case 5 chains need finite alpha and beta");
      const cplx w = aux::omega_case5(inv);
      if (kind == AuxKind::h4 && w.real() < 0) constraint("omega_sign", "H4 needs Re(omega) >= 0");
      if (kind == AuxKind::h5 && w.real() >= 0) constraint("omega_sign", "H5 needs Re(omega) < 0");
      return kind == AuxKind::h4 ? aux::h4(H, inv, w) : aux::h5(H, inv, w);
    }
    case AuxKind::h6:
    case AuxKind::h7: {
      detail::require_case(inv, 6, kind);
      if (!std::isfinite(inv.alpha_low)) constraint("alpha_infinite", "case 6 chains need alpha > -inf");
      const cplx w = aux::omega_case6(inv);
      if (kind == AuxKind::h6 && w.real() < 0) constraint("omega_sign", "H6 needs Re(omega) >= 0");
      if (kind == AuxKind::h7 && w.real() >= 0) constraint("omega_sign", "H7 needs Re(omega) < 0");
      return kind == AuxKind::h6 ? aux::h6(H, inv, w) : aux::h7(H, inv, w);
    }
    case AuxKind::h6_mirror:
    case AuxKind::h7_mirror: {
      detail::require_case(inv, 7, kind);
      if (!std::isfinite(inv.beta_high)) constraint("beta_infinite", "case 7 chains need beta < inf");
      const cplx w = aux::omega_case7(inv);
      if (kind == AuxKind::h6_mirror && w.real() < 0) constraint("omega_sign", "H6_mirror needs Re(omega) >= 0");
      if (kind == AuxKind::h7_mirror && w.real() >= 0) constraint("omega_sign", "H7_mirror needs Re(omega) < 0");
      return kind == AuxKind::h6_mirror ? aux::h6_mirror(H, inv, w) : aux::h7_mirror(H, inv, w);
    }
    case AuxKind::h8: {
      detail::require_case(inv, 8, kind);
      if (!cp.has_eta || !cp.has_zeta) constraint("missing_parameter", "H8 needs eta and zeta");
      const double as = inv.a_star, a2 = inv.a2_star;
      if (as * cp.eta.real() < g + 2.0 * a2 * (nu - 1.0) + inv.mu.real() - kZeroTol)
        constraint("eta_too_small", "H8 needs a* Re(eta) >= gamma(r) + 2 a2* (nu - 1) + Re(mu)");
      if (!(cp.eta.real() > nu - 1.0)) constraint("eta_too_small", "H8 needs Re(eta) > nu - 1");
      if (!(cp.zeta.real() < 1.0 - nu)) constraint("zeta_too_large", "H8 needs Re(zeta) < 1 - nu");
      return aux::h8(H, inv, cp.eta, cp.zeta);
    }
    case AuxKind::h9: {
      detail::require_case(inv, 9, kind);
      if (!cp.has_eta || !cp.has_zeta) constraint("missing_parameter", "H9 needs eta and zeta");
      const double as = inv.a_star, a1 = inv.a1_star;
      if (as * cp.eta.real() < g - 2.0 * a1 * nu + inv.delta_cap + inv.mu.real() - kZeroTol)
        constraint("eta_too_small", "H9 needs a* Re(eta) >= gamma(r) - 2 a1* nu + Delta + Re(mu)");
      if (!(cp.eta.real() > -nu)) constraint("eta_too_small", "H9 needs Re(eta) > -nu");
      if (!(cp.zeta.real() < nu)) constraint("zeta_too_large", "H9 needs Re(zeta) < nu");
      return aux::h9(H, inv, cp.eta, cp.zeta);
    }
  }
  return H;
}

}  // namespace foxh
