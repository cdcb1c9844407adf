#include "calabi/jets.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace calabi {

namespace {

constexpr int kOrder = 4;

// Shared per-dimension tables: the multi-index basis of total degree <= 4
// and the truncated product pairing.
struct TaylorSpace {
  int n = 0;
  std::vector<std::array<std::uint8_t, kMaxJetDim>> alpha;
  std::vector<std::uint8_t> degree;
  std::vector<std::uint32_t> var_pos;  // position of the multi-index e_i

  struct ProdTerm {
    std::uint32_t a, b, c;
  };
  std::vector<ProdTerm> prod;

  std::unordered_map<std::uint64_t, std::uint32_t> lookup;

  std::uint64_t key(const std::array<std::uint8_t, kMaxJetDim>& a) const {
    std::uint64_t k = 0;
    for (int i = n - 1; i >= 0; --i) k = k * 5 + a[i];
    return k;
  }

  std::uint32_t position(const std::array<std::uint8_t, kMaxJetDim>& a) const {
    return lookup.at(key(a));
  }

  explicit TaylorSpace(int dim) : n(dim) {
    // enumerate multi-indices by total degree
    std::array<std::uint8_t, kMaxJetDim> cur{};
    for (int d = 0; d <= kOrder; ++d) enumerate(cur, 0, d, d);
    for (std::uint32_t i = 0; i < alpha.size(); ++i) lookup.emplace(key(alpha[i]), i);
    var_pos.resize(n);
    for (int i = 0; i < n; ++i) {
      std::array<std::uint8_t, kMaxJetDim> e{};
      e[i] = 1;
      var_pos[i] = position(e);
    }
    // product table: every ordered coefficient pair that survives truncation
    for (std::uint32_t ia = 0; ia < alpha.size(); ++ia)
      for (std::uint32_t ib = 0; ib < alpha.size(); ++ib) {
        if (degree[ia] + degree[ib] > kOrder) continue;
        std::array<std::uint8_t, kMaxJetDim> sum{};
        for (int i = 0; i < n; ++i) sum[i] = static_cast<std::uint8_t>(alpha[ia][i] + alpha[ib][i]);
        prod.push_back({ia, ib, position(sum)});
      }
  }

  void enumerate(std::array<std::uint8_t, kMaxJetDim>& cur, int var, int remaining, int total) {
    if (var == n - 1) {
      cur[var] = static_cast<std::uint8_t>(remaining);
      alpha.push_back(cur);
      degree.push_back(static_cast<std::uint8_t>(total));
      cur[var] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[var] = static_cast<std::uint8_t>(e);
      enumerate(cur, var + 1, remaining - e, total);
    }
    cur[var] = 0;
  }
};

const TaylorSpace& taylor_space(int n) {
  static std::mutex mu;
  static std::array<std::unique_ptr<TaylorSpace>, kMaxJetDim + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = std::make_unique<TaylorSpace>(n);
  return *cache[n];
}

// Truncated polynomial of total degree <= 4 over the space's basis.
struct Poly {
  const TaylorSpace* sp;
  std::vector<double> c;

  explicit Poly(const TaylorSpace& s) : sp(&s), c(s.alpha.size(), 0.0) {}
  double value() const { return c[0]; }
};

Poly constant_poly(const TaylorSpace& sp, double v) {
  Poly p(sp);
  p.c[0] = v;
  return p;
}

Poly variable_poly(const TaylorSpace& sp, int var, double x0) {
  Poly p(sp);
  p.c[0] = x0;
  p.c[sp.var_pos[var]] = 1.0;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (double& x : r.c) x = -x;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(*a.sp);
  for (const auto& t : a.sp->prod) {
    const double av = a.c[t.a];
    if (av == 0.0) continue;
    r.c[t.c] += av * b.c[t.b];
  }
  return r;
}

// phi(u) truncated at degree 4, from coefficients ck = phi^(k)(u0)/k!:
// Horner over the zero-constant part of u.
Poly compose_series(const Poly& u, const std::array<double, kOrder + 1>& ck) {
  Poly uhat = u;
  uhat.c[0] = 0.0;
  Poly r = constant_poly(*u.sp, ck[kOrder]);
  for (int k = kOrder - 1; k >= 0; --k) {
    r = r * uhat;
    r.c[0] += ck[k];
  }
  return r;
}

Poly reciprocal(const Poly& u, const ExprNode& where) {
  const double u0 = u.value();
  if (u0 == 0.0) throw EvalError("division by zero in " + to_string(where));
  const double i1 = 1.0 / u0;
  const double i2 = i1 * i1;
  return compose_series(u, {i1, -i2, i2 * i1, -i2 * i2, i2 * i2 * i1});
}

Poly integer_power(const Poly& u, long m) {
  // binary exponentiation; exact for any base point including u0 = 0
  Poly acc = constant_poly(*u.sp, 1.0);
  Poly base = u;
  unsigned long e = static_cast<unsigned long>(m);
  while (e != 0) {
    if (e & 1UL) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Poly eval_poly(const ExprNode& node, const TaylorSpace& sp, std::span<const double> point) {
  switch (node.kind) {
    case ExprNode::Kind::Constant:
      return constant_poly(sp, node.constant);
    case ExprNode::Kind::Variable:
      return variable_poly(sp, node.var_index - 1, point[static_cast<std::size_t>(node.var_index - 1)]);
    case ExprNode::Kind::Binary: {
      const Poly a = eval_poly(*node.lhs, sp, point);
      const Poly b = eval_poly(*node.rhs, sp, point);
      switch (node.bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a * reciprocal(b, node);
      }
      break;
    }
    case ExprNode::Kind::Unary: {
      const Poly u = eval_poly(*node.lhs, sp, point);
      const double u0 = u.value();
      switch (node.uop) {
        case UnaryOp::Neg:
          return -u;
        case UnaryOp::Ln: {
          if (!(u0 > 0.0)) throw EvalError("ln of non-positive argument in " + to_string(node));
          const double i1 = 1.0 / u0;
          const double i2 = i1 * i1;
          return compose_series(u, {std::log(u0), i1, -0.5 * i2, i2 * i1 / 3.0, -0.25 * i2 * i2});
        }
        case UnaryOp::Exp: {
          const double e = std::exp(u0);
          return compose_series(u, {e, e, e / 2.0, e / 6.0, e / 24.0});
        }
        case UnaryOp::Sqrt: {
          if (!(u0 > 0.0)) throw EvalError("sqrt of non-positive argument in " + to_string(node));
          const double r = std::sqrt(u0);
          const double i1 = 1.0 / u0;
          // binomial series for u^(1/2)
          return compose_series(
              u, {r, 0.5 * r * i1, -0.125 * r * i1 * i1, 0.0625 * r * i1 * i1 * i1,
                  -0.0390625 * r * i1 * i1 * i1 * i1});
        }
        case UnaryOp::Sin: {
          const double s = std::sin(u0), c = std::cos(u0);
          return compose_series(u, {s, c, -s / 2.0, -c / 6.0, s / 24.0});
        }
        case UnaryOp::Cos: {
          const double s = std::sin(u0), c = std::cos(u0);
          return compose_series(u, {c, -s, -c / 2.0, s / 6.0, c / 24.0});
        }
        case UnaryOp::Sinh: {
          const double s = std::sinh(u0), c = std::cosh(u0);
          return compose_series(u, {s, c, s / 2.0, c / 6.0, s / 24.0});
        }
        case UnaryOp::Cosh: {
          const double s = std::sinh(u0), c = std::cosh(u0);
          return compose_series(u, {c, s, c / 2.0, s / 6.0, c / 24.0});
        }
      }
      break;
    }
    case ExprNode::Kind::Pow: {
      const Poly u = eval_poly(*node.lhs, sp, point);
      const double e = node.exponent;
      if (e == 0.0) return constant_poly(sp, 1.0);
      const bool integral = (e == std::floor(e)) && std::abs(e) <= 1024.0;
      if (integral) {
        const long m = static_cast<long>(e);
        if (m > 0) return integer_power(u, m);
        return reciprocal(integer_power(u, -m), node);
      }
      const double u0 = u.value();
      if (!(u0 > 0.0)) throw EvalError("fractional power of non-positive base in " + to_string(node));
      std::array<double, kOrder + 1> ck{};
      double fall = 1.0;  // e (e-1) ... (e-k+1) / k!
      for (int k = 0; k <= kOrder; ++k) {
        if (k > 0) fall *= (e - (k - 1)) / k;
        ck[static_cast<std::size_t>(k)] = fall * std::pow(u0, e - k);
      }
      return compose_series(u, ck);
    }
  }
  throw EvalError("malformed expression node");
}

double factorial_of_multiindex(std::span<const int> idx) {
  // product over variables of (multiplicity)!
  double f = 1.0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    int count = 0;
    while (j < idx.size() && idx[j] == idx[i]) {
      ++count;
      ++j;
    }
    for (int m = 2; m <= count; ++m) f *= m;
    i = j;
  }
  return f;
}

}  // namespace

Jet4 jet4(const Expression& expr, std::span<const double> point) {
  const int n = expr.dim();
  if (static_cast<int>(point.size()) != n) throw InvalidArgument("point length does not match dimension");
  if (n < 1 || n > kMaxJetDim)
    throw UnsupportedDimension("jet4 supports dimensions 1.." + std::to_string(kMaxJetDim));
  const TaylorSpace& sp = taylor_space(n);
  const Poly p = eval_poly(*expr.root(), sp, point);

  Jet4 jet;
  jet.n = n;
  jet.value = p.value();
  jet.d1.assign(n, 0.0);
  jet.d2 = Mat(n, n);
  jet.d3 = Sym3(n);
  jet.d4 = Sym4(n);

  std::array<std::uint8_t, kMaxJetDim> a{};
  auto coeff = [&](std::span<const int> idx) {
    a.fill(0);
    for (int v : idx) ++a[v];
    return p.c[sp.position(a)] * factorial_of_multiindex(idx);
  };

  for (int i = 0; i < n; ++i) {
    const int i1[] = {i};
    jet.d1[i] = coeff(i1);
    for (int j = i; j < n; ++j) {
      const int i2[] = {i, j};
      const double v2 = coeff(i2);
      jet.d2(i, j) = v2;
      jet.d2(j, i) = v2;
      for (int k = j; k < n; ++k) {
        const int i3[] = {i, j, k};
        jet.d3.at(i, j, k) = coeff(i3);
        for (int l = k; l < n; ++l) {
          const int i4[] = {i, j, k, l};
          jet.d4.at(i, j, k, l) = coeff(i4);
        }
      }
    }
  }

  for (double v : p.c)
    if (!std::isfinite(v)) throw EvalError("non-finite derivative in jet of " + to_string(expr));
  return jet;
}

Jet4 jet4(const ConvexFunction& f, std::span<const double> point) {
  if (!f.domain.contains(point)) throw EvalError("point outside the domain of " + (f.name.empty() ? std::string("function") : f.name));
  return jet4(f.body, point);
}

namespace {

// idx lists 0-based axes; each level applies one central difference.
long double fd_recurse(const Expression& expr, std::vector<long double>& x, std::span<const int> idx,
                       long double h) {
  if (idx.empty()) return evaluate_ld(expr, x);
  const int axis = idx.back();
  const auto rest = idx.first(idx.size() - 1);
  x[axis] += h;
  const long double fp = fd_recurse(expr, x, rest, h);
  x[axis] -= 2.0L * h;
  const long double fm = fd_recurse(expr, x, rest, h);
  x[axis] += h;
  return (fp - fm) / (2.0L * h);
}

}  // namespace

Jet4 finite_difference_jet(const Expression& expr, std::span<const double> point, double h) {
  const int n = expr.dim();
  if (!(h > 0.0)) throw InvalidArgument("finite difference step must be positive");
  if (static_cast<int>(point.size()) != n) throw InvalidArgument("point length does not match dimension");

  std::vector<long double> x(point.begin(), point.end());
  const long double hl = h;

  Jet4 jet;
  jet.n = n;
  jet.d1.assign(n, 0.0);
  jet.d2 = Mat(n, n);
  jet.d3 = Sym3(n);
  jet.d4 = Sym4(n);

  auto stencil = [&](std::span<const int> idx) {
    try {
      return static_cast<double>(fd_recurse(expr, x, idx, hl));
    } catch (const EvalError& e) {
      throw EvalError(std::string("domain violation during stencil sampling: ") + e.what());
    }
  };

  jet.value = stencil({});
  for (int i = 0; i < n; ++i) {
    const int i1[] = {i};
    jet.d1[i] = stencil(i1);
    for (int j = i; j < n; ++j) {
      const int i2[] = {i, j};
      const double v2 = stencil(i2);
      jet.d2(i, j) = v2;
      jet.d2(j, i) = v2;
      for (int k = j; k < n; ++k) {
        const int i3[] = {i, j, k};
        jet.d3.at(i, j, k) = stencil(i3);
        for (int l = k; l < n; ++l) {
          const int i4[] = {i, j, k, l};
          jet.d4.at(i, j, k, l) = stencil(i4);
        }
      }
    }
  }
  return jet;
}

double jet_deviation(const Jet4& a, const Jet4& b) {
  double worst = 0.0;
  auto upd = [&worst](double x, double y) {
    const double d = std::abs(x - y) / (1.0 + std::abs(x));
    if (d > worst) worst = d;
  };
  upd(a.value, b.value);
  const int n = a.n;
  for (int i = 0; i < n; ++i) {
    upd(a.d1[i], b.d1[i]);
    for (int j = i; j < n; ++j) {
      upd(a.d2(i, j), b.d2(i, j));
      for (int k = j; k < n; ++k) {
        upd(a.d3.at(i, j, k), b.d3.at(i, j, k));
        for (int l = k; l < n; ++l) upd(a.d4.at(i, j, k, l), b.d4.at(i, j, k, l));
      }
    }
  }
  return worst;
}

}  // namespace calabi
