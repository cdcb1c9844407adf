#include "calabi/catalog.hpp"

#include <cmath>

#include "calabi/jets.hpp"

namespace calabi {

namespace {

std::string sum_of_squares(int first, int last, const std::string& scale) {
  // "x<first>^2/scale + ... + x<last>^2/scale" (no scale when empty)
  std::string s;
  for (int k = first; k <= last; ++k) {
    if (!s.empty()) s += " + ";
    s += "x" + std::to_string(k) + "^2";
    if (!scale.empty()) s += "/" + scale;
  }
  return s;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ExpectedValue ev(double value, std::string equation, std::string origin) {
  return ExpectedValue{value, std::move(equation), std::move(origin)};
}

CatalogEntry build(CatalogEntry::Kind kind, const std::string& name, int n) {
  CatalogEntry e;
  e.name = name;
  e.kind = kind;
  e.n = n;

  const double nn = n;
  const double tnorm2 = (nn + 1.0) * (nn + 1.0) / (nn * nn);
  const double pick = n >= 2 ? (3.0 * nn + 1.0) / (nn * (nn - 1.0)) : 0.0;

  std::string body;
  std::vector<std::string> constraints;

  switch (kind) {
    case CatalogEntry::Kind::Quadratic:
      body = "0.5*(" + sum_of_squares(1, n, "") + ")";
      e.equation = "trivial";
      e.expected.tnorm2 = ev(0.0, "trivial", "closed-form");
      e.expected.pick_invariant = ev(0.0, "trivial", "closed-form");
      e.expected.sectional = ev(0.0, "trivial", "closed-form");
      break;

    case CatalogEntry::Kind::Thm13a: {
      const std::string g = "x1 - (" + sum_of_squares(2, n, "2") + ")";
      body = "-0.25*ln(" + g + ")";
      constraints.push_back(g);
      e.equation = "eq-1.4";
      e.expected.solving_exponent = ev(-nn / (nn + 1.0), "eq-1.2", "closed-form");
      e.expected.lsharp_at_minus_one = ev(-4.0 * (nn + 1.0), "eq-1.1", "closed-form");
      e.expected.theta = ev(2.0, "eq-3.2", "closed-form");
      e.expected.tnorm2 = ev(tnorm2, "eq-5.5", "closed-form");
      e.expected.pick_invariant = ev(pick, "eq-5.6", "closed-form");
      e.expected.sectional = ev(-1.0, "eq-4.2", "closed-form");
      e.param_case = "flat_minus";
      break;
    }

    case CatalogEntry::Kind::Thm13b: {
      body = "-0.25*ln(x1)";
      for (int k = 2; k <= n; ++k) body += " + x" + std::to_string(k) + "^2/(2*x1)";
      constraints.push_back("x1");
      e.equation = "eq-1.5";
      e.expected.solving_exponent = ev(-1.0 / (nn + 1.0), "eq-1.2", "closed-form");
      e.expected.lsharp_at_minus_one = ev(-4.0 * nn * (nn + 1.0), "eq-1.1", "closed-form");
      e.expected.theta = ev(2.0, "eq-3.2", "closed-form");
      e.expected.tnorm2 = ev(tnorm2, "eq-5.5", "derived");
      e.expected.pick_invariant = ev(pick, "eq-5.6", "derived");
      e.expected.sectional = ev(-1.0, "eq-4.3", "closed-form");
      e.param_case = "flat_plus";
      break;
    }

    case CatalogEntry::Kind::SphereCase: {
      const std::string r2 = "(" + sum_of_squares(1, n, "") + ")";
      body = "0.25*" + r2 + "^0.5 - 0.25*ln(" + r2 + "^0.5 + 1)";
      constraints.push_back(sum_of_squares(1, n, ""));
      e.equation = "eq-4.1";
      e.expected.theta = ev(2.0, "eq-3.2", "closed-form");
      e.expected.tnorm2 = ev(tnorm2, "eq-5.5", "derived");
      e.expected.pick_invariant = ev(pick, "eq-5.6", "derived");
      e.expected.sectional = ev(-1.0, "eq-4.1", "closed-form");
      e.param_case = "sphere";
      break;
    }

    case CatalogEntry::Kind::HyperbolicCase: {
      std::string q = "x1^2";
      for (int k = 2; k <= n; ++k) q += " - x" + std::to_string(k) + "^2";
      const std::string s = "(" + q + ")^0.5";
      body = "-0.25*" + s + " - 0.25*ln(" + s + " - 1)";
      constraints.push_back(q + " - 1");
      e.equation = "eq-4.4";
      e.expected.theta = ev(2.0, "eq-3.2", "closed-form");
      e.expected.tnorm2 = ev(tnorm2, "eq-5.5", "derived");
      e.expected.pick_invariant = ev(pick, "eq-5.6", "derived");
      e.expected.sectional = ev(-1.0, "eq-4.4", "closed-form");
      e.expected.solves_no_exponent = true;  // no a fits this graph anywhere
      e.param_case = "hyperbolic";
      break;
    }

    case CatalogEntry::Kind::Dual59: {
      const std::string gt = "-x1 - (" + sum_of_squares(2, n, "2") + ")";
      // additive constants ln(4) + 1 keep this the exact conjugate value
      body = "-0.25*(ln(" + gt + ") + ln(4) + 1)";
      constraints.push_back(gt);
      e.equation = "eq-5.9";
      e.expected.solving_exponent = ev(-nn / (nn + 1.0), "eq-1.2", "derived");
      e.expected.lsharp_at_minus_one = ev(-4.0 * (nn + 1.0), "eq-1.1", "derived");
      e.expected.theta = ev(2.0, "eq-3.2", "derived");
      e.expected.tnorm2 = ev(tnorm2, "eq-5.5", "derived");
      e.expected.pick_invariant = ev(pick, "eq-5.6", "derived");
      e.expected.sectional = ev(-1.0, "eq-5.9", "derived");
      break;
    }
  }

  e.f.dim = n;
  e.f.name = name;
  e.f.source = body;
  e.f.body = parse(body, n);
  std::vector<Expression> hs;
  for (const std::string& c : constraints) hs.push_back(parse(c, n));
  e.f.domain = Domain(std::move(hs));
  return e;
}

}  // namespace

Vec CatalogEntry::sample_interior(std::mt19937_64& rng) const {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec x(static_cast<std::size_t>(n), 0.0);
    switch (kind) {
      case Kind::Quadratic:
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = uniform(rng, -2.0, 2.0);
        break;
      case Kind::Thm13a: {
        double s = 0.0;
        for (int i = 1; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = uniform(rng, -1.0, 1.0);
          s += 0.5 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        x[0] = s + uniform(rng, 1.5, 3.0);
        break;
      }
      case Kind::Thm13b:
        x[0] = uniform(rng, 1.5, 3.0);
        for (int i = 1; i < n; ++i) x[static_cast<std::size_t>(i)] = uniform(rng, -1.0, 1.0);
        break;
      case Kind::SphereCase: {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = uniform(rng, -1.0, 1.0);
          norm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        if (norm2 < 1e-6) continue;
        const double r = uniform(rng, 1.0, 2.0) / std::sqrt(norm2);
        for (double& xi : x) xi *= r;
        break;
      }
      case Kind::HyperbolicCase: {
        double s2 = 0.0;
        for (int i = 1; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = uniform(rng, -0.6, 0.6);
          s2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        const double q = uniform(rng, 2.5, 4.0);  // q = sqrt(x1^2 - sum)
        x[0] = std::sqrt(q * q + s2);
        break;
      }
      case Kind::Dual59: {
        double s = 0.0;
        for (int i = 1; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = uniform(rng, -1.0, 1.0);
          s += 0.5 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
        x[0] = -(s + uniform(rng, 1.5, 3.0));
        break;
      }
    }
    if (f.domain.margin(x) >= 1e-3) return x;
  }
  throw Error("interior sampling failed for catalog entry " + name);
}

CatalogEntry get(const std::string& name, int n) {
  CatalogEntry::Kind kind;
  if (name == "quadratic") {
    kind = CatalogEntry::Kind::Quadratic;
  } else if (name == "thm13a") {
    kind = CatalogEntry::Kind::Thm13a;
  } else if (name == "thm13b") {
    kind = CatalogEntry::Kind::Thm13b;
  } else if (name == "sphere_case") {
    kind = CatalogEntry::Kind::SphereCase;
  } else if (name == "hyperbolic_case") {
    kind = CatalogEntry::Kind::HyperbolicCase;
  } else if (name == "dual59") {
    kind = CatalogEntry::Kind::Dual59;
  } else {
    throw InvalidArgument("unknown catalog entry '" + name + "'");
  }
  const int min_n = (kind == CatalogEntry::Kind::Quadratic) ? 1 : 2;
  if (n < min_n)
    throw BadDimension("catalog entry '" + name + "' requires n >= " + std::to_string(min_n));
  if (n > kMaxJetDim)
    throw UnsupportedDimension("catalog entries support n <= " + std::to_string(kMaxJetDim));
  return build(kind, name, n);
}

std::vector<std::string> catalog_names() {
  return {"quadratic", "thm13a", "thm13b", "sphere_case", "hyperbolic_case", "dual59"};
}

}  // namespace calabi
