#include "bloch/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "bloch/error.hpp"

namespace bloch {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

complex int_pow(complex z, int n) {
  complex result = 1.0;
  complex base = z;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

template <class Node>
std::shared_ptr<const SymbolNode> make(Node n) {
  return std::make_shared<const SymbolNode>(SymbolNode{std::move(n)});
}

}  // namespace

AnalyticMap AnalyticMap::constant(complex c) { return AnalyticMap(make(nodes::Constant{c})); }

AnalyticMap AnalyticMap::identity() { return AnalyticMap(make(nodes::Identity{})); }

AnalyticMap AnalyticMap::monomial(int power) {
  if (power < 1) throw ParameterError("monomial power must be >= 1");
  return AnalyticMap(make(nodes::Monomial{power}));
}

AnalyticMap AnalyticMap::affine(complex a, complex b) {
  return AnalyticMap(make(nodes::Affine{a, b}));
}

AnalyticMap AnalyticMap::mobius(const DiskPoint& a) { return AnalyticMap(make(nodes::Mobius{a})); }

AnalyticMap AnalyticMap::blaschke(std::vector<DiskPoint> zeros, complex unimodular) {
  if (zeros.empty()) throw ParameterError("Blaschke product needs at least one zero");
  if (std::abs(std::abs(unimodular) - 1.0) > 1e-12) {
    throw ParameterError("Blaschke factor must be unimodular");
  }
  return AnalyticMap(make(nodes::Blaschke{std::move(zeros), unimodular}));
}

AnalyticMap AnalyticMap::polynomial(std::vector<complex> coefficients) {
  if (coefficients.empty()) throw ParameterError("polynomial needs at least one coefficient");
  return AnalyticMap(make(nodes::Polynomial{std::move(coefficients)}));
}

AnalyticMap AnalyticMap::dilate(double r, AnalyticMap inner) {
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("dilation radius must lie in [0, 1]");
  return AnalyticMap(make(nodes::Dilation{r, std::move(inner)}));
}

AnalyticMap AnalyticMap::compose(AnalyticMap outer, AnalyticMap inner) {
  return AnalyticMap(make(nodes::Compose{std::move(outer), std::move(inner)}));
}

AnalyticMap AnalyticMap::scale(complex c, AnalyticMap inner) {
  return AnalyticMap(make(nodes::Scale{c, std::move(inner)}));
}

AnalyticMap AnalyticMap::sum(AnalyticMap left, AnalyticMap right) {
  return AnalyticMap(make(nodes::Sum{std::move(left), std::move(right)}));
}

AnalyticMap AnalyticMap::product(AnalyticMap left, AnalyticMap right) {
  return AnalyticMap(make(nodes::Product{std::move(left), std::move(right)}));
}

AnalyticMap AnalyticMap::sigma(const SigmaFamily& family) {
  return AnalyticMap(make(nodes::Sigma{family}));
}

Jet AnalyticMap::jet(complex z) const {
  return std::visit(
      overloaded{
          [](const nodes::Constant& n) { return Jet{n.c, 0.0}; },
          [&](const nodes::Identity&) { return Jet{z, 1.0}; },
          [&](const nodes::Monomial& n) {
            const complex p = int_pow(z, n.power - 1);
            return Jet{p * z, static_cast<double>(n.power) * p};
          },
          [&](const nodes::Affine& n) { return Jet{n.a + n.b * z, n.b}; },
          [&](const nodes::Mobius& n) {
            const complex a = n.a.value();
            const complex w = 1.0 - std::conj(a) * z;
            return Jet{(a - z) / w, (std::norm(a) - 1.0) / (w * w)};
          },
          [&](const nodes::Blaschke& n) {
            complex p = n.unimodular;
            complex dp = 0.0;
            for (const DiskPoint& zero : n.zeros) {
              const complex zk = zero.value();
              const complex w = 1.0 - std::conj(zk) * z;
              const complex f = (z - zk) / w;
              const complex df = (1.0 - std::norm(zk)) / (w * w);
              dp = dp * f + p * df;
              p *= f;
            }
            return Jet{p, dp};
          },
          [&](const nodes::Polynomial& n) {
            complex p = 0.0;
            complex dp = 0.0;
            for (auto it = n.coefficients.rbegin(); it != n.coefficients.rend(); ++it) {
              dp = dp * z + p;
              p = p * z + *it;
            }
            return Jet{p, dp};
          },
          [&](const nodes::Dilation& n) {
            const Jet inner = n.inner.jet(n.r * z);
            return Jet{inner.value, n.r * inner.derivative};
          },
          [&](const nodes::Compose& n) {
            const Jet inner = n.inner.jet(z);
            const Jet outer = n.outer.jet(inner.value);
            return Jet{outer.value, outer.derivative * inner.derivative};
          },
          [&](const nodes::Scale& n) {
            const Jet inner = n.inner.jet(z);
            return Jet{n.c * inner.value, n.c * inner.derivative};
          },
          [&](const nodes::Sum& n) {
            const Jet l = n.left.jet(z);
            const Jet r = n.right.jet(z);
            return Jet{l.value + r.value, l.derivative + r.derivative};
          },
          [&](const nodes::Product& n) {
            const Jet l = n.left.jet(z);
            const Jet r = n.right.jet(z);
            return Jet{l.value * r.value, l.derivative * r.value + l.value * r.derivative};
          },
          [&](const nodes::Sigma& n) {
            const SigmaFamily& s = n.family;
            const complex abar = std::conj(s.a.value());
            const complex log_w = std::log(1.0 - abar * z);
            const double scale = 1.0 - s.a.modulus();
            return Jet{scale * expm1(-s.alpha * log_w),
                       s.alpha * abar * scale * std::exp((-s.alpha - 1.0) * log_w)};
          },
      },
      node_->data);
}

double AnalyticMap::derivative_modulus(complex z) const {
  if (const auto* s = std::get_if<nodes::Sigma>(&node_->data)) {
    const double m = s->family.a.modulus();
    const double w2 = std::norm(1.0 - std::conj(s->family.a.value()) * z);
    const double alpha = s->family.alpha;
    const double power = alpha == 1.0 ? 1.0 / w2 : std::pow(w2, -0.5 * (alpha + 1.0));
    return alpha * m * (1.0 - m) * power;
  }
  if (const auto* mob = std::get_if<nodes::Mobius>(&node_->data)) {
    const complex a = mob->a.value();
    return (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * z);
  }
  return std::abs(jet(z).derivative);
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_complex(complex z) {
  std::string text = format_real(z.real());
  if (z.imag() != 0.0) {
    if (z.imag() > 0.0) text += '+';
    text += format_real(z.imag());
    text += 'i';
  }
  return text;
}

std::string AnalyticMap::to_string() const {
  auto list = [](const auto& items, auto&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += fmt(items[i]);
    }
    return out;
  };
  return std::visit(
      overloaded{
          [](const nodes::Constant& n) { return "const(" + format_complex(n.c) + ")"; },
          [](const nodes::Identity&) { return std::string("identity"); },
          [](const nodes::Monomial& n) { return "pow(" + std::to_string(n.power) + ")"; },
          [](const nodes::Affine& n) {
            return "affine(" + format_complex(n.a) + ", " + format_complex(n.b) + ")";
          },
          [](const nodes::Mobius& n) { return "mobius(" + format_complex(n.a.value()) + ")"; },
          [&](const nodes::Blaschke& n) {
            std::string body =
                "blaschke(" +
                list(n.zeros, [](const DiskPoint& p) { return format_complex(p.value()); }) + ")";
            if (n.unimodular != complex(1.0)) {
              body = "scale(" + format_complex(n.unimodular) + ", " + body + ")";
            }
            return body;
          },
          [&](const nodes::Polynomial& n) {
            return "poly(" + list(n.coefficients, [](complex c) { return format_complex(c); }) +
                   ")";
          },
          [](const nodes::Dilation& n) {
            return "dilate(" + format_real(n.r) + ", " + n.inner.to_string() + ")";
          },
          [](const nodes::Compose& n) {
            return "compose(" + n.outer.to_string() + ", " + n.inner.to_string() + ")";
          },
          [](const nodes::Scale& n) {
            return "scale(" + format_complex(n.c) + ", " + n.inner.to_string() + ")";
          },
          [](const nodes::Sum& n) {
            return "sum(" + n.left.to_string() + ", " + n.right.to_string() + ")";
          },
          [](const nodes::Product& n) {
            return "product(" + n.left.to_string() + ", " + n.right.to_string() + ")";
          },
          [](const nodes::Sigma& n) {
            return "sigma(" + format_real(n.family.alpha) + ", " +
                   format_complex(n.family.a.value()) + ")";
          },
      },
      node_->data);
}

std::optional<MonomialForm> AnalyticMap::monomial_form() const {
  using Form = std::optional<MonomialForm>;
  return std::visit(
      overloaded{
          [](const nodes::Constant& n) -> Form { return MonomialForm{n.c, 0}; },
          [](const nodes::Identity&) -> Form { return MonomialForm{1.0, 1}; },
          [](const nodes::Monomial& n) -> Form { return MonomialForm{1.0, n.power}; },
          [](const nodes::Affine& n) -> Form {
            if (n.a == 0.0) return MonomialForm{n.b, 1};
            if (n.b == 0.0) return MonomialForm{n.a, 0};
            return std::nullopt;
          },
          [](const nodes::Mobius& n) -> Form {
            if (n.a.value() == 0.0) return MonomialForm{-1.0, 1};
            return std::nullopt;
          },
          [](const nodes::Blaschke&) -> Form { return std::nullopt; },
          [](const nodes::Polynomial& n) -> Form {
            std::optional<std::size_t> only;
            for (std::size_t k = 0; k < n.coefficients.size(); ++k) {
              if (n.coefficients[k] == 0.0) continue;
              if (only) return std::nullopt;
              only = k;
            }
            if (!only) return MonomialForm{0.0, 0};
            return MonomialForm{n.coefficients[*only], static_cast<int>(*only)};
          },
          [](const nodes::Dilation& n) -> Form {
            auto inner = n.inner.monomial_form();
            if (!inner) return std::nullopt;
            return MonomialForm{inner->coefficient * std::pow(n.r, inner->power), inner->power};
          },
          [](const nodes::Compose& n) -> Form {
            auto outer = n.outer.monomial_form();
            if (!outer) return std::nullopt;
            if (outer->power == 0) return outer;
            auto inner = n.inner.monomial_form();
            if (!inner) return std::nullopt;
            return MonomialForm{outer->coefficient * int_pow(inner->coefficient, outer->power),
                                outer->power * inner->power};
          },
          [](const nodes::Scale& n) -> Form {
            auto inner = n.inner.monomial_form();
            if (!inner) return std::nullopt;
            return MonomialForm{n.c * inner->coefficient, inner->power};
          },
          [](const nodes::Sum& n) -> Form {
            auto l = n.left.monomial_form();
            auto r = n.right.monomial_form();
            if (!l || !r) return std::nullopt;
            if (l->coefficient == 0.0) return r;
            if (r->coefficient == 0.0) return l;
            if (l->power != r->power) return std::nullopt;
            return MonomialForm{l->coefficient + r->coefficient, l->power};
          },
          [](const nodes::Product& n) -> Form {
            auto l = n.left.monomial_form();
            auto r = n.right.monomial_form();
            if (!l || !r) return std::nullopt;
            return MonomialForm{l->coefficient * r->coefficient, l->power + r->power};
          },
          [](const nodes::Sigma& n) -> Form {
            if (n.family.a.value() == 0.0) return MonomialForm{0.0, 0};
            return std::nullopt;
          },
      },
      node_->data);
}

int AnalyticMap::depth() const {
  return std::visit(
      overloaded{
          [](const nodes::Dilation& n) { return 1 + n.inner.depth(); },
          [](const nodes::Scale& n) { return 1 + n.inner.depth(); },
          [](const nodes::Compose& n) { return 1 + std::max(n.outer.depth(), n.inner.depth()); },
          [](const nodes::Sum& n) { return 1 + std::max(n.left.depth(), n.right.depth()); },
          [](const nodes::Product& n) { return 1 + std::max(n.left.depth(), n.right.depth()); },
          [](const auto&) { return 1; },
      },
      node_->data);
}

complex eval(const AnalyticMap& map, const DiskPoint& z) { return map.eval(z.value()); }

complex eval_derivative(const AnalyticMap& map, const DiskPoint& z) {
  return map.derivative(z.value());
}

namespace {

// max of |phi(e^{it})| near t0, by golden-section search on [t0 - h, t0 + h].
double refine_boundary_max(const AnalyticMap& map, double t0, double h) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return std::abs(map.eval(std::polar(1.0, t))); };
  double lo = t0 - h;
  double hi = t0 + h;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({f1, f2, f(t0)});
}

}  // namespace

SelfMapCertificate certify_self_map(const AnalyticMap& map, const DiskGrid& grid) {
  SelfMapCertificate cert;
  complex witness = 0.0;
  double sup = -1.0;
  grid.for_each_point([&](std::size_t, std::size_t, complex z) {
    const double m = std::abs(map.eval(z));
    if (!(m <= sup)) {  // also captures nan
      sup = std::isnan(m) ? std::numeric_limits<double>::infinity() : m;
      witness = z;
    }
  });
  cert.sup_modulus_estimate = sup;
  cert.witness = DiskPoint(witness);
  if (sup > 1.0 + kSelfMapTolerance) {
    throw NotSelfMap("symbol " + map.to_string() + " is not a self-map of the disk: max |phi| = " +
                         format_real(sup) + " on the certification grid",
                     sup);
  }

  constexpr int kBoundarySamples = 16384;
  constexpr int kRefined = 4;
  std::vector<std::pair<double, int>> samples;
  samples.reserve(kBoundarySamples);
  bool finite = true;
  for (int i = 0; i < kBoundarySamples; ++i) {
    const double m = std::abs(map.eval(std::polar(1.0, kTwoPi * i / kBoundarySamples)));
    if (!std::isfinite(m)) finite = false;
    samples.emplace_back(m, i);
  }
  double boundary = std::numeric_limits<double>::infinity();
  if (finite) {
    std::partial_sort(samples.begin(), samples.begin() + kRefined, samples.end(),
                      [](const auto& x, const auto& y) { return x.first > y.first; });
    boundary = samples.front().first;
    const double h = kTwoPi / kBoundarySamples;
    for (int k = 0; k < kRefined; ++k) {
      boundary = std::max(boundary, refine_boundary_max(map, h * samples[k].second, h));
    }
  }
  cert.boundary_modulus_estimate = boundary;
  cert.is_strict = sup <= 1.0 - kSelfMapTolerance && boundary <= 1.0 - kSelfMapTolerance;
  return cert;
}

}  // namespace bloch
