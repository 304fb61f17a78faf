#include "nullcert/poly.hpp"

#include <sstream>

#include "nullcert/error.hpp"
#include "nullcert/linalg.hpp"

namespace nullcert {

BivariatePolynomial BivariatePolynomial::constant(FieldElement c) {
  return monomial(c, 0, 0);
}

BivariatePolynomial BivariatePolynomial::monomial(FieldElement c, std::uint32_t x_exp,
                                                  std::uint32_t y_exp) {
  BivariatePolynomial f(c.field());
  f.add_term({x_exp, y_exp}, c);
  return f;
}

BivariatePolynomial BivariatePolynomial::linear(const LinearForm& form) {
  const PrimeField field = form.alpha.field();
  if (form.beta.field() != field || form.gamma.field() != field) throw FieldMismatch();
  BivariatePolynomial f(field);
  f.add_term({1, 0}, form.alpha);
  f.add_term({0, 1}, form.beta);
  f.add_term({0, 0}, form.gamma);
  return f;
}

BivariatePolynomial BivariatePolynomial::from_terms(PrimeField field, std::span<const Term> terms) {
  BivariatePolynomial f(field);
  for (const auto& t : terms) f.add_term({t.x_exp, t.y_exp}, field.element(t.coefficient));
  return f;
}

int BivariatePolynomial::total_degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, static_cast<int>(m.degree()));
  return deg;
}

FieldElement BivariatePolynomial::coefficient(std::uint32_t x_exp, std::uint32_t y_exp) const {
  auto it = terms_.find({x_exp, y_exp});
  return field_.element(it == terms_.end() ? 0 : it->second);
}

std::vector<Term> BivariatePolynomial::to_terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back({m.x_exp, m.y_exp, c});
  return out;
}

void BivariatePolynomial::add_term(Monomial m, FieldElement c) {
  if (c.field() != field_) throw FieldMismatch();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c.value());
  if (inserted) return;
  it->second = modp::add(it->second, c.value(), field_.modulus());
  if (it->second == 0) terms_.erase(it);
}

FieldElement BivariatePolynomial::evaluate(FieldElement t, FieldElement s) const {
  if (t.field() != field_ || s.field() != field_) throw FieldMismatch();
  const std::uint32_t p = field_.modulus();
  std::uint32_t max_x = 0, max_y = 0;
  for (const auto& [m, c] : terms_) {
    max_x = std::max(max_x, m.x_exp);
    max_y = std::max(max_y, m.y_exp);
  }
  std::vector<std::uint32_t> tp(max_x + 1, 1 % p), sp(max_y + 1, 1 % p);
  for (std::uint32_t i = 1; i <= max_x; ++i) tp[i] = modp::mul(tp[i - 1], t.value(), p);
  for (std::uint32_t j = 1; j <= max_y; ++j) sp[j] = modp::mul(sp[j - 1], s.value(), p);
  std::uint32_t acc = 0;
  for (const auto& [m, c] : terms_) {
    acc = modp::add(acc, modp::mul(c, modp::mul(tp[m.x_exp], sp[m.y_exp], p), p), p);
  }
  return field_.element(acc);
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  if (o.field_ != field_) throw FieldMismatch();
  BivariatePolynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, field_.element(c));
  return out;
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  return *this + o.scaled(-field_.one());
}

BivariatePolynomial BivariatePolynomial::scaled(FieldElement k) const {
  if (k.field() != field_) throw FieldMismatch();
  BivariatePolynomial out(field_);
  for (const auto& [m, c] : terms_) out.add_term(m, k * field_.element(c));
  return out;
}

BivariatePolynomial BivariatePolynomial::multiply(const BivariatePolynomial& o,
                                                  std::uint32_t degree_cap) const {
  if (o.field_ != field_) throw FieldMismatch();
  BivariatePolynomial out(field_);
  if (is_zero() || o.is_zero()) return out;
  const int deg = total_degree() + o.total_degree();
  if (deg > static_cast<int>(degree_cap)) {
    throw PreconditionError("product degree " + std::to_string(deg) + " exceeds cap " +
                            std::to_string(degree_cap));
  }
  const std::uint32_t p = field_.modulus();
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      out.add_term({m1.x_exp + m2.x_exp, m1.y_exp + m2.y_exp},
                   field_.element(modp::mul(c1, c2, p)));
    }
  }
  return out;
}

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    os << (first ? "" : " + ") << c;
    if (m.x_exp) os << "*x" << (m.x_exp > 1 ? "^" + std::to_string(m.x_exp) : "");
    if (m.y_exp) os << "*y" << (m.y_exp > 1 ? "^" + std::to_string(m.y_exp) : "");
    first = false;
  }
  return os.str();
}

BivariatePolynomial line_product(PrimeField field, std::span<const LinearForm> lines,
                                 std::uint32_t degree_cap) {
  if (lines.size() > degree_cap) {
    throw PreconditionError("line product of degree " + std::to_string(lines.size()) +
                            " exceeds cap " + std::to_string(degree_cap));
  }
  BivariatePolynomial acc = BivariatePolynomial::constant(field.one());
  for (const auto& line : lines) acc = acc.multiply(BivariatePolynomial::linear(line), degree_cap);
  return acc;
}

namespace {

// 1 / prod_{other != x}(x - other) for every x in `points`.
std::vector<FieldElement> inverse_node_weights(std::span<const FieldElement> points) {
  std::vector<FieldElement> weights;
  weights.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElement prod = points[i].field().one();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i != j) prod *= points[i] - points[j];
    }
    if (prod.is_zero()) throw PreconditionError("interpolation nodes must be distinct");
    weights.push_back(prod.inverse());
  }
  return weights;
}

}  // namespace

FieldElement top_coefficient_interpolation(const BivariatePolynomial& f,
                                           std::span<const FieldElement> xs,
                                           std::span<const FieldElement> ys) {
  if (xs.empty() || ys.empty()) throw PreconditionError("interpolation grid must be nonempty");
  const int limit = static_cast<int>(xs.size() + ys.size()) - 2;
  if (f.total_degree() > limit) {
    throw PreconditionError("polynomial degree " + std::to_string(f.total_degree()) +
                            " exceeds |A|+|B|-2 = " + std::to_string(limit));
  }
  const auto wx = inverse_node_weights(xs);
  const auto wy = inverse_node_weights(ys);
  FieldElement sum = f.field().zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      sum += f.evaluate(xs[i], ys[j]) * wx[i] * wy[j];
    }
  }
  return sum;
}

FieldElement top_coefficient_interpolation(const BivariatePolynomial& f, const ElementSet& a,
                                           const ElementSet& b) {
  if (a.field() != f.field() || b.field() != f.field()) throw FieldMismatch();
  const auto xs = a.elements();
  const auto ys = b.elements();
  return top_coefficient_interpolation(f, xs, ys);
}

std::vector<GridPoint> vanishing_profile(const BivariatePolynomial& f, const ElementSet& x,
                                         const ElementSet& y) {
  if (x.field() != f.field() || y.field() != f.field()) throw FieldMismatch();
  std::vector<GridPoint> out;
  for (auto t : x.elements()) {
    for (auto s : y.elements()) {
      if (!f.evaluate(t, s).is_zero()) out.push_back({t, s});
    }
  }
  return out;
}

std::vector<Monomial> graded_monomials(std::uint32_t max_degree) {
  std::vector<Monomial> out;
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    for (std::uint32_t i = d + 1; i-- > 0;) out.push_back({i, d - i});
  }
  return out;
}

FeasibilityResult min_degree_feasibility(const ElementSet& x, const ElementSet& y,
                                         const GridPoint& exceptional, std::uint32_t max_degree) {
  const PrimeField field = x.field();
  if (y.field() != field) throw FieldMismatch();
  if (!x.contains(exceptional.t) || !y.contains(exceptional.s)) {
    throw PreconditionError("exceptional point lies outside the grid");
  }
  const std::uint32_t p = field.modulus();
  const auto basis = graded_monomials(max_degree);
  const auto xs = x.residues();
  const auto ys = y.residues();

  // Power tables: pow_x[i][k] = xs[i]^k.
  auto powers = [&](std::span<const std::uint32_t> pts) {
    std::vector<std::vector<std::uint32_t>> table(pts.size(),
                                                  std::vector<std::uint32_t>(max_degree + 1));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      table[i][0] = 1 % p;
      for (std::uint32_t k = 1; k <= max_degree; ++k) {
        table[i][k] = modp::mul(table[i][k - 1], pts[i], p);
      }
    }
    return table;
  };
  const auto pow_x = powers(xs);
  const auto pow_y = powers(ys);

  linalg::ModMatrix m(xs.size() * ys.size(), basis.size(), p);
  std::vector<std::uint32_t> rhs(m.rows(), 0);
  std::size_t row = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j, ++row) {
      for (std::size_t c = 0; c < basis.size(); ++c) {
        m.at(row, c) = modp::mul(pow_x[i][basis[c].x_exp], pow_y[j][basis[c].y_exp], p);
      }
      if (xs[i] == exceptional.t.value() && ys[j] == exceptional.s.value()) rhs[row] = 1 % p;
    }
  }

  auto solution = linalg::solve(std::move(m), std::move(rhs));
  if (!solution) return {false, std::nullopt};
  BivariatePolynomial witness(field);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    witness.add_term(basis[c], field.element((*solution)[c]));
  }
  return {true, std::move(witness)};
}

}  // namespace nullcert
