#include "calabi/warped.hpp"

#include <cmath>

#include "calabi/calabi_core.hpp"
#include "calabi/jets.hpp"

namespace calabi {

namespace {

struct EtaState {
  double eta, rho;
};

EtaState rhs(const EtaState& s) {
  return {1.0 - s.eta * s.eta, s.eta * s.rho};
}

EtaState axpy(const EtaState& s, double h, const EtaState& d) {
  return {s.eta + h * d.eta, s.rho + h * d.rho};
}

}  // namespace

EtaTrajectory integrate_eta(double eta0, double t_end, double step) {
  if (!(step > 0.0) || step > 0.01) throw InvalidArgument("step must lie in (0, 0.01]");
  if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");

  EtaTrajectory traj;
  traj.step = step;
  EtaState s{eta0, 1.0};
  double t = 0.0;
  traj.samples.push_back({t, s.eta, s.rho, s.rho * s.rho * (s.eta * s.eta - 1.0)});

  while (t < t_end - 1e-15) {
    const double h = std::min(step, t_end - t);
    const EtaState k1 = rhs(s);
    const EtaState k2 = rhs(axpy(s, 0.5 * h, k1));
    const EtaState k3 = rhs(axpy(s, 0.5 * h, k2));
    const EtaState k4 = rhs(axpy(s, h, k3));
    s.eta += h / 6.0 * (k1.eta + 2.0 * (k2.eta + k3.eta) + k4.eta);
    s.rho += h / 6.0 * (k1.rho + 2.0 * (k2.rho + k3.rho) + k4.rho);
    t += h;
    if (std::abs(s.eta) > 1e6) throw BlowUp("eta exceeded 1e6 during integration");
    traj.samples.push_back({t, s.eta, s.rho, s.rho * s.rho * (s.eta * s.eta - 1.0)});
  }
  return traj;
}

double eta_closed_form(double eta0, double t) {
  if (eta0 == 1.0) return 1.0;
  if (eta0 == -1.0) return -1.0;
  if (std::abs(eta0) < 1.0) return std::tanh(t + std::atanh(eta0));
  // coth branch through eta(0) = eta0
  const double c = 0.5 * std::log((eta0 + 1.0) / (eta0 - 1.0));
  return 1.0 / std::tanh(t + c);
}

WarpedCase warped_case_from_name(const std::string& name) {
  if (name == "sphere") return WarpedCase::Sphere;
  if (name == "flat_minus") return WarpedCase::FlatMinus;
  if (name == "flat_plus") return WarpedCase::FlatPlus;
  if (name == "hyperbolic") return WarpedCase::Hyperbolic;
  throw InvalidArgument("unknown case '" + name + "' (expected sphere, flat_minus, flat_plus, hyperbolic)");
}

std::string warped_case_name(WarpedCase c) {
  switch (c) {
    case WarpedCase::Sphere: return "sphere";
    case WarpedCase::FlatMinus: return "flat_minus";
    case WarpedCase::FlatPlus: return "flat_plus";
    case WarpedCase::Hyperbolic: return "hyperbolic";
  }
  return {};
}

namespace {

std::string u_square_sum(int n) {
  std::string s;
  for (int k = 2; k <= n; ++k) {
    if (!s.empty()) s += " + ";
    s += "u" + std::to_string(k) + "^2";
  }
  return "(" + s + ")";
}

std::string sin_chain(int first, int last) {
  // "sin(u<first>)*...*sin(u<last>)", "1" when empty
  if (first > last) return "1";
  std::string s;
  for (int k = first; k <= last; ++k) {
    if (!s.empty()) s += "*";
    s += "sin(u" + std::to_string(k) + ")";
  }
  return s;
}

AffineTransform scale_base_and_shift(int n, double base_scale, bool skip_first, double vertical_shift) {
  AffineTransform tr = identity_transform(n + 1);
  for (int i = skip_first ? 1 : 0; i < n; ++i) tr.matrix(i, i) = base_scale;
  tr.translation[static_cast<std::size_t>(n)] = vertical_shift;
  return tr;
}

}  // namespace

ParamCase param_case(WarpedCase id, int n) {
  if (n < 2) throw BadDimension("classification cases require n >= 2");
  if (n > kMaxJetDim) throw UnsupportedDimension("classification cases support n <= " + std::to_string(kMaxJetDim));

  ParamCase pc;
  pc.id = id;
  pc.n = n;
  std::vector<std::string> comp(static_cast<std::size_t>(n) + 1);
  std::vector<std::string> constraints;

  switch (id) {
    case WarpedCase::Sphere: {
      pc.equation = "eq-4.30";
      const std::string r = "(0.5*exp(2*t) - 0.5)";
      for (int k = 1; k <= n; ++k) {
        std::string c = r + "*" + sin_chain(2, k);
        if (k < n) c += "*cos(u" + std::to_string(k + 1) + ")";
        comp[static_cast<std::size_t>(k - 1)] = c;
      }
      comp[static_cast<std::size_t>(n)] = "0.25*exp(2*t) - t/2";
      pc.target = get("sphere_case", n);
      pc.normalizer = scale_base_and_shift(n, 2.0, false, -0.25);
      constraints.push_back("t");  // rho = sinh t positive
      break;
    }
    case WarpedCase::FlatMinus: {
      pc.equation = "eq-4.39";
      comp[0] = "2*" + u_square_sum(n) + " + exp(2*t)";
      for (int k = 2; k <= n; ++k) comp[static_cast<std::size_t>(k - 1)] = "u" + std::to_string(k);
      comp[static_cast<std::size_t>(n)] = "-t/2";
      pc.target = get("thm13a", n);
      pc.normalizer = scale_base_and_shift(n, 2.0, true, 0.0);
      break;
    }
    case WarpedCase::FlatPlus: {
      pc.equation = "eq-4.45";
      comp[0] = "exp(2*t)";
      for (int k = 2; k <= n; ++k)
        comp[static_cast<std::size_t>(k - 1)] = "exp(2*t)*u" + std::to_string(k);
      comp[static_cast<std::size_t>(n)] = "0.5*exp(2*t)*" + u_square_sum(n) + " - t/2";
      pc.target = get("thm13b", n);
      pc.normalizer = identity_transform(n + 1);
      break;
    }
    case WarpedCase::Hyperbolic: {
      pc.equation = "eq-4.57";
      const std::string r = "(0.5*exp(2*t) + 0.5)";
      comp[0] = r + "*cosh(u2)";
      for (int k = 2; k <= n; ++k) {
        std::string c = r + "*sinh(u2)";
        if (k >= 3) c += "*" + sin_chain(3, k);
        if (k < n) c += "*cos(u" + std::to_string(k + 1) + ")";
        comp[static_cast<std::size_t>(k - 1)] = c;
      }
      comp[static_cast<std::size_t>(n)] = "-0.25*exp(2*t) - t/2";
      pc.target = get("hyperbolic_case", n);
      pc.normalizer = scale_base_and_shift(n, 2.0, false, -0.25);
      break;
    }
  }

  for (int i = 0; i <= n; ++i)
    pc.immersion.push_back(parse(comp[static_cast<std::size_t>(i)], n));
  std::vector<Expression> hs;
  for (const std::string& c : constraints) hs.push_back(parse(c, n));
  pc.param_domain = Domain(std::move(hs));
  return pc;
}

Vec sample_params(const ParamCase& pc, std::mt19937_64& rng) {
  const int n = pc.n;
  auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  Vec p(static_cast<std::size_t>(n), 0.0);
  switch (pc.id) {
    case WarpedCase::Sphere:
      p[0] = uni(0.15, 1.2);
      for (int k = 1; k < n - 1; ++k) p[static_cast<std::size_t>(k)] = uni(0.3, 2.8);  // polar angles
      if (n >= 2) p[static_cast<std::size_t>(n - 1)] = uni(-2.5, 2.5);
      break;
    case WarpedCase::FlatMinus:
    case WarpedCase::FlatPlus:
      p[0] = uni(-0.5, 0.8);
      for (int k = 1; k < n; ++k) p[static_cast<std::size_t>(k)] = uni(-1.0, 1.0);
      break;
    case WarpedCase::Hyperbolic:
      p[0] = uni(-0.5, 0.8);
      if (n == 2) {
        p[1] = uni(-1.2, 1.2);
      } else {
        p[1] = uni(0.3, 1.3);  // sinh(u2) bounded away from zero
        for (int k = 2; k < n - 1; ++k) p[static_cast<std::size_t>(k)] = uni(0.3, 2.8);
        p[static_cast<std::size_t>(n - 1)] = uni(-2.5, 2.5);
      }
      break;
  }
  return p;
}

Vec immersion_point(const ParamCase& pc, std::span<const double> params) {
  if (static_cast<int>(params.size()) != pc.n) throw InvalidArgument("parameter count must equal n");
  if (!pc.param_domain.contains(params))
    throw EvalError("parameters outside the chart of case " + warped_case_name(pc.id));
  Vec out;
  out.reserve(pc.immersion.size());
  for (const Expression& e : pc.immersion) out.push_back(evaluate(e, params));
  return out;
}

namespace {

// Normalized base point and its parameter Jacobian (n x n).
void normalized_base(const ParamCase& pc, std::span<const double> params, Vec& base, Mat& jac) {
  const int n = pc.n;
  if (static_cast<int>(params.size()) != n) throw InvalidArgument("parameter count must equal n");
  if (!pc.param_domain.contains(params))
    throw EvalError("parameters outside the chart of case " + warped_case_name(pc.id));

  Mat jac_imm(n, n);
  Vec raw(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const Jet4 jet = jet4(pc.immersion[static_cast<std::size_t>(i)], params);
    raw[static_cast<std::size_t>(i)] = jet.value;
    for (int a = 0; a < n; ++a) jac_imm(i, a) = jet.d1[static_cast<std::size_t>(a)];
  }
  raw[static_cast<std::size_t>(n)] = evaluate(pc.immersion[static_cast<std::size_t>(n)], params);

  const Vec mapped = apply_affine(pc.normalizer, raw);
  base.assign(mapped.begin(), mapped.begin() + n);

  // Calabi transforms never mix the vertical coordinate into the base
  jac = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += pc.normalizer.matrix(i, j) * jac_imm(j, a);
      jac(i, a) = s;
    }
}

}  // namespace

double graph_residual(const ParamCase& pc, std::span<const double> params) {
  const Vec raw = immersion_point(pc, params);
  const Vec mapped = apply_affine(pc.normalizer, raw);
  const Vec base(mapped.begin(), mapped.begin() + pc.n);
  if (!pc.target.f.domain.contains(base))
    throw EvalError("normalized point left the domain of " + pc.target.name);
  const double f_val = evaluate(pc.target.f.body, base);
  return std::abs(mapped[static_cast<std::size_t>(pc.n)] - f_val);
}

Mat pullback_metric(const ParamCase& pc, std::span<const double> params) {
  const int n = pc.n;
  Vec base;
  Mat jac;
  normalized_base(pc, params, base, jac);
  const Jet4 jet = jet4(pc.target.f, base);
  Mat out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += jac(i, a) * jet.d2(i, j) * jac(j, b);
      out(a, b) = s;
      out(b, a) = s;
    }
  return out;
}

Sym3 fubini_pick_pullback(const ParamCase& pc, std::span<const double> params) {
  const int n = pc.n;
  Vec base;
  Mat jac;
  normalized_base(pc, params, base, jac);
  const Jet4 jet = jet4(pc.target.f, base);
  Sym3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              s += -0.5 * jet.d3.at(i, j, k) * jac(i, a) * jac(j, b) * jac(k, c);
        out.at(a, b, c) = s;
      }
  return out;
}

Mat warped_metric(const ParamCase& pc, std::span<const double> params) {
  const int n = pc.n;
  if (static_cast<int>(params.size()) != n) throw InvalidArgument("parameter count must equal n");
  const double t = params[0];
  Mat g(n, n);
  g(0, 0) = 1.0;
  switch (pc.id) {
    case WarpedCase::Sphere: {
      const double sh = std::sinh(t);
      double fiber = sh * sh;
      for (int k = 1; k < n; ++k) {
        g(k, k) = fiber;
        const double s = std::sin(params[static_cast<std::size_t>(k)]);
        fiber *= s * s;
      }
      break;
    }
    case WarpedCase::FlatMinus:
      for (int k = 1; k < n; ++k) g(k, k) = std::exp(-2.0 * t);
      break;
    case WarpedCase::FlatPlus:
      for (int k = 1; k < n; ++k) g(k, k) = std::exp(2.0 * t);
      break;
    case WarpedCase::Hyperbolic: {
      const double ch = std::cosh(t);
      double fiber = ch * ch;
      for (int k = 1; k < n; ++k) {
        g(k, k) = fiber;
        const double s = (k == 1) ? std::sinh(params[1]) : std::sin(params[static_cast<std::size_t>(k)]);
        fiber *= s * s;
      }
      break;
    }
  }
  return g;
}

std::vector<double> warped_christoffels_closed(const ParamCase& pc, std::span<const double> params) {
  const int n = pc.n;
  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
  auto set = [&](int k, int i, int j, double v) {
    gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = v;
    gamma[(static_cast<std::size_t>(k) * n + j) * n + i] = v;
  };
  const double t = params[0];

  switch (pc.id) {
    case WarpedCase::Sphere: {
      // G = dt^2 + sinh^2 t (du2^2 + sin^2 u2 du3^2 + ...)
      for (int k = 1; k < n; ++k) set(k, 0, k, std::cosh(t) / std::sinh(t));
      for (int k = 1; k < n; ++k) {
        double prod = 1.0;
        for (int j = 1; j < k; ++j) {
          const double s = std::sin(params[static_cast<std::size_t>(j)]);
          prod *= s * s;
        }
        set(0, k, k, -std::sinh(t) * std::cosh(t) * prod);
      }
      for (int k = 1; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
          set(j, k, j, std::cos(params[static_cast<std::size_t>(k)]) / std::sin(params[static_cast<std::size_t>(k)]));
      for (int j = 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double prod = 1.0;
          for (int i = j + 1; i < k; ++i) {
            const double s = std::sin(params[static_cast<std::size_t>(i)]);
            prod *= s * s;
          }
          set(j, k, k, -0.5 * std::sin(2.0 * params[static_cast<std::size_t>(j)]) * prod);
        }
      break;
    }
    case WarpedCase::FlatMinus:
      for (int k = 1; k < n; ++k) {
        set(k, 0, k, -1.0);
        set(0, k, k, std::exp(-2.0 * t));
      }
      break;
    case WarpedCase::FlatPlus:
      for (int k = 1; k < n; ++k) {
        set(k, 0, k, 1.0);
        set(0, k, k, -std::exp(2.0 * t));
      }
      break;
    case WarpedCase::Hyperbolic: {
      // G = dt^2 + cosh^2 t [du2^2 + sinh^2 u2 (du3^2 + sin^2 u3 du4^2 + ...)]
      const double u2 = params.size() > 1 ? params[1] : 0.0;
      for (int k = 1; k < n; ++k) set(k, 0, k, std::tanh(t));
      set(0, 1, 1, -std::sinh(t) * std::cosh(t));
      for (int k = 2; k < n; ++k) set(k, 1, k, std::cosh(u2) / std::sinh(u2));
      for (int k = 2; k < n; ++k) {
        double prod = 1.0;
        for (int j = 2; j < k; ++j) {
          const double s = std::sin(params[static_cast<std::size_t>(j)]);
          prod *= s * s;
        }
        const double sh2 = std::sinh(u2) * std::sinh(u2);
        set(0, k, k, -std::sinh(t) * std::cosh(t) * sh2 * prod);
        set(1, k, k, -0.5 * std::sinh(2.0 * u2) * prod);
      }
      for (int k = 2; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
          set(j, k, j, std::cos(params[static_cast<std::size_t>(k)]) / std::sin(params[static_cast<std::size_t>(k)]));
      for (int j = 2; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double prod = 1.0;
          for (int i = j + 1; i < k; ++i) {
            const double s = std::sin(params[static_cast<std::size_t>(i)]);
            prod *= s * s;
          }
          set(j, k, k, -0.5 * std::sin(2.0 * params[static_cast<std::size_t>(j)]) * prod);
        }
      break;
    }
  }
  return gamma;
}

std::vector<double> warped_christoffels_fd(const ParamCase& pc, std::span<const double> params, double h) {
  const int n = pc.n;
  if (!(h > 0.0)) throw InvalidArgument("finite difference step must be positive");
  Vec p(params.begin(), params.end());

  // dg[a][i][j] = d g_ij / d p_a by central differences
  std::vector<Mat> dg(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    p[static_cast<std::size_t>(a)] += h;
    const Mat gp = warped_metric(pc, p);
    p[static_cast<std::size_t>(a)] -= 2.0 * h;
    const Mat gm = warped_metric(pc, p);
    p[static_cast<std::size_t>(a)] += h;
    Mat d(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
    dg[static_cast<std::size_t>(a)] = d;
  }

  const Mat g = warped_metric(pc, params);
  Mat lower;
  if (!try_cholesky(g, lower)) throw NotConvexAtPoint("warped metric degenerate at these parameters");
  const Mat ginv = spd_inverse_from_cholesky(lower);

  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = 0.5 * s;
      }
  return gamma;
}

}  // namespace calabi
