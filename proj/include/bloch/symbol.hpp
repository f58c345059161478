#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bloch/disk.hpp"
#include "bloch/sigma.hpp"

namespace bloch {

/// Value and first derivative of an analytic function at one point.
struct Jet {
  complex value;
  complex derivative;
};

/// f(z) = coefficient * z^power (power 0 means a constant).
struct MonomialForm {
  complex coefficient;
  int power;
};

struct SymbolNode;

/// Immutable expression tree for an analytic function on the disk.
/// Copies share structure; evaluation is thread-safe.
class AnalyticMap {
 public:
  static AnalyticMap constant(complex c);
  static AnalyticMap identity();
  static AnalyticMap monomial(int power);
  /// a + b z
  static AnalyticMap affine(complex a, complex b);
  /// (a - z) / (1 - conj(a) z)
  static AnalyticMap mobius(const DiskPoint& a);
  /// unimodular * prod (z - z_k) / (1 - conj(z_k) z)
  static AnalyticMap blaschke(std::vector<DiskPoint> zeros, complex unimodular = 1.0);
  /// sum c_k z^k
  static AnalyticMap polynomial(std::vector<complex> coefficients);
  /// (K_r f)(z) = f(r z), r in [0, 1]
  static AnalyticMap dilate(double r, AnalyticMap inner);
  static AnalyticMap compose(AnalyticMap outer, AnalyticMap inner);
  static AnalyticMap scale(complex c, AnalyticMap inner);
  static AnalyticMap sum(AnalyticMap left, AnalyticMap right);
  static AnalyticMap product(AnalyticMap left, AnalyticMap right);
  static AnalyticMap sigma(const SigmaFamily& family);

  /// Value and structural derivative (chain and product rules).
  Jet jet(complex z) const;
  complex eval(complex z) const { return jet(z).value; }
  complex derivative(complex z) const { return jet(z).derivative; }
  /// |f'(z)|; closed forms for sigma and Mobius roots skip the complex
  /// logarithm and exponential.
  double derivative_modulus(complex z) const;

  const SymbolNode& node() const noexcept { return *node_; }

  /// Canonical text in the symbol grammar; parse_symbol(to_string()) yields
  /// a tree with identical values.
  std::string to_string() const;

  /// Non-empty when the tree reduces to c z^j, in which case |f'| depends
  /// only on |z|.
  std::optional<MonomialForm> monomial_form() const;

  /// Height of the tree (a leaf has depth 1).
  int depth() const;

 private:
  explicit AnalyticMap(std::shared_ptr<const SymbolNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const SymbolNode> node_;
};

namespace nodes {
struct Constant { complex c; };
struct Identity {};
struct Monomial { int power; };
struct Affine { complex a, b; };
struct Mobius { DiskPoint a; };
struct Blaschke { std::vector<DiskPoint> zeros; complex unimodular; };
struct Polynomial { std::vector<complex> coefficients; };
struct Dilation { double r; AnalyticMap inner; };
struct Compose { AnalyticMap outer, inner; };
struct Scale { complex c; AnalyticMap inner; };
struct Sum { AnalyticMap left, right; };
struct Product { AnalyticMap left, right; };
struct Sigma { SigmaFamily family; };
}  // namespace nodes

struct SymbolNode {
  std::variant<nodes::Constant, nodes::Identity, nodes::Monomial, nodes::Affine, nodes::Mobius,
               nodes::Blaschke, nodes::Polynomial, nodes::Dilation, nodes::Compose,
               nodes::Scale, nodes::Sum, nodes::Product, nodes::Sigma>
      data;
};

/// Parses the symbol grammar (case and whitespace insensitive):
///
///   expr := identity | const(c) | pow(int) | mobius(c) | affine(c, c)
///         | poly(c, ...) | blaschke(c, ...) | dilate(real, expr)
///         | scale(c, expr) | compose(expr, expr) | sum(expr, expr)
///         | product(expr, expr) | sigma(real, c)
///   c    := real | real (+|-) real i
///
/// Throws ParseError carrying the byte offset of the problem.
AnalyticMap parse_symbol(std::string_view text);

complex eval(const AnalyticMap& map, const DiskPoint& z);
complex eval_derivative(const AnalyticMap& map, const DiskPoint& z);

/// Shortest round-trip text for a real number.
std::string format_real(double x);
/// "re", or "re+imi" / "re-imi" when the imaginary part is non-zero.
std::string format_complex(complex z);

inline constexpr double kSelfMapTolerance = 1e-9;

struct SelfMapCertificate {
  /// max |phi| over the certification grid
  double sup_modulus_estimate = 0.0;
  DiskPoint witness;
  /// max |phi| on the unit circle (angles refined locally); inf when phi
  /// does not extend continuously there.
  double boundary_modulus_estimate = 0.0;
  /// phi(D) stays a positive distance inside the disk.
  bool is_strict = false;
};

/// Numerical check that phi maps D into D.  Throws NotSelfMap when the grid
/// maximum exceeds 1 + 1e-9.  `is_strict` requires both the grid maximum and
/// the boundary maximum to be at most 1 - 1e-9.
SelfMapCertificate certify_self_map(const AnalyticMap& map, const DiskGrid& grid);

}  // namespace bloch
