#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "morext/algebra.hpp"

namespace morext {

/// A left module over some algebra E, presented by the action matrices of
/// a fixed list of generators of E (column convention: s -> M s). Two
/// modules are comparable only if their generator lists mean the same
/// elements of E; callers build both sides from the same algebra data.
template <Field F>
struct Module {
  F field;
  std::size_t dim = 0;
  std::vector<Matrix<F>> actions;
};

/// Basis of Hom_E(X, Y) as Y.dim x X.dim matrices: F X_g = Y_g F for every
/// generator g.
template <Field F>
std::vector<Matrix<F>> hom_space(const Module<F>& x, const Module<F>& y) {
  if (x.actions.size() != y.actions.size()) throw Error("modules over different generator sets");
  if (!(x.field == y.field)) throw FieldMismatch();
  const F& f = x.field;
  const std::size_t mx = x.dim, my = y.dim, unknowns = mx * my;
  if (unknowns == 0) return {};
  Echelon<F> eqs(f, unknowns);
  auto var = [mx](std::size_t r, std::size_t c) { return r * mx + c; };
  std::vector<typename F::value_type> acc(unknowns, f.zero());
  std::vector<std::size_t> touched;
  for (std::size_t g = 0; g < x.actions.size(); ++g) {
    const auto& xg = x.actions[g];
    const auto& yg = y.actions[g];
    // Nonzero pattern of the columns of X_g and the rows of Y_g.
    std::vector<std::vector<std::size_t>> xcol(mx), yrow(my);
    for (std::size_t k = 0; k < mx; ++k)
      for (std::size_t c = 0; c < mx; ++c)
        if (!f.is_zero(xg(k, c))) xcol[c].push_back(k);
    for (std::size_t r = 0; r < my; ++r)
      for (std::size_t k = 0; k < my; ++k)
        if (!f.is_zero(yg(r, k))) yrow[r].push_back(k);
    for (std::size_t r = 0; r < my; ++r)
      for (std::size_t c = 0; c < mx; ++c) {
        auto bump = [&](std::size_t v, const typename F::value_type& a) {
          if (f.is_zero(acc[v])) touched.push_back(v);
          acc[v] = f.add(acc[v], a);
        };
        for (auto k : xcol[c]) bump(var(r, k), xg(k, c));
        for (auto k : yrow[r]) bump(var(k, c), f.neg(yg(r, k)));
        SparseRow<F> row;
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto v : touched) {
          if (!f.is_zero(acc[v])) row.emplace_back(v, acc[v]);
          acc[v] = f.zero();
        }
        touched.clear();
        if (!row.empty()) eqs.insert(row);
      }
  }
  std::vector<Matrix<F>> out;
  for (auto& k : eqs.kernel()) out.push_back(Matrix<F>::from_flat(f, my, mx, std::move(k)));
  return out;
}

template <Field F>
bool is_module_map(const Matrix<F>& map, const Module<F>& x, const Module<F>& y) {
  if (map.rows() != y.dim || map.cols() != x.dim) return false;
  for (std::size_t g = 0; g < x.actions.size(); ++g)
    if (!(map * x.actions[g] == y.actions[g] * map)) return false;
  return true;
}

/// Family f_i: X -> Y, g_i: Y -> X with sum g_i f_i = id_X.
template <Field F>
struct SummandWitness {
  std::vector<Matrix<F>> to;    // f_i : X -> Y
  std::vector<Matrix<F>> back;  // g_i : Y -> X
};

template <Field F>
bool check_summand_witness(const SummandWitness<F>& w, const Module<F>& x, const Module<F>& y) {
  if (w.to.size() != w.back.size()) return false;
  Matrix<F> sum(x.field, x.dim, x.dim);
  for (std::size_t i = 0; i < w.to.size(); ++i) {
    if (!is_module_map(w.to[i], x, y) || !is_module_map(w.back[i], y, x)) return false;
    sum = sum + w.back[i] * w.to[i];
  }
  return sum == Matrix<F>::identity(x.field, x.dim);
}

/// Decides X | Y^n for some n via the trace ideal: id_X must lie in the
/// span of the composites g o f inside End_E(X). On success returns a
/// family realising the identity.
template <Field F>
std::optional<SummandWitness<F>> summand_witness(const Module<F>& x, const Module<F>& y) {
  const F& f = x.field;
  if (x.dim == 0) return SummandWitness<F>{};
  auto there = hom_space(x, y);
  auto back = hom_space(y, x);
  const auto id = Matrix<F>::identity(f, x.dim);

  // Grow a basis of the trace ideal; stop once it contains the identity.
  Echelon<F> ideal(f, x.dim * x.dim);
  std::vector<std::pair<std::size_t, std::size_t>> used;
  std::vector<Vec<F>> composites;
  bool found = false;
  for (std::size_t a = 0; a < there.size() && !found; ++a)
    for (std::size_t b = 0; b < back.size() && !found; ++b) {
      auto comp = back[b] * there[a];
      if (!ideal.insert(comp.flat())) continue;
      used.emplace_back(a, b);
      composites.push_back(comp.flat());
      found = ideal.contains(id.flat());
    }
  if (!found) return std::nullopt;

  auto coeffs = span_membership(f, composites, id.flat());
  if (!coeffs) throw Error("trace ideal basis lost the identity");
  // Fold coefficients: for each f_a, g = sum_b c_ab g_b.
  SummandWitness<F> w;
  std::vector<std::optional<Matrix<F>>> folded(there.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (f.is_zero((*coeffs)[i])) continue;
    auto [a, b] = used[i];
    auto term = back[b].scaled((*coeffs)[i]);
    folded[a] = folded[a] ? *folded[a] + term : term;
  }
  for (std::size_t a = 0; a < there.size(); ++a)
    if (folded[a]) {
      w.to.push_back(there[a]);
      w.back.push_back(*folded[a]);
    }
  if (!check_summand_witness(w, x, y)) throw Error("summand witness failed its own check");
  return w;
}

/// An L-R bimodule with action matrices for every basis element of L and R.
template <Field F>
class Bimodule {
 public:
  Bimodule(AlgebraPtr<F> left, AlgebraPtr<F> right, std::size_t dim,
           std::vector<Matrix<F>> left_action, std::vector<Matrix<F>> right_action)
      : left_(std::move(left)), right_(std::move(right)), dim_(dim),
        left_action_(std::move(left_action)), right_action_(std::move(right_action)) {
    if (left_action_.size() != left_->dim() || right_action_.size() != right_->dim())
      throw DimensionMismatch("bimodule action tables");
    for (const auto& m : left_action_)
      if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("left action matrix");
    for (const auto& m : right_action_)
      if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("right action matrix");
  }

  const F& field() const { return left_->field(); }
  const AlgebraPtr<F>& left() const { return left_; }
  const AlgebraPtr<F>& right() const { return right_; }
  std::size_t dim() const { return dim_; }
  const Matrix<F>& left_basis_action(std::size_t i) const { return left_action_[i]; }
  const Matrix<F>& right_basis_action(std::size_t i) const { return right_action_[i]; }

  Matrix<F> left_matrix(const Vec<F>& l) const { return combine(left_action_, l); }
  Matrix<F> right_matrix(const Vec<F>& r) const { return combine(right_action_, r); }
  Vec<F> act_left(const Vec<F>& l, const Vec<F>& s) const { return left_matrix(l).apply(s); }
  Vec<F> act_right(const Vec<F>& s, const Vec<F>& r) const { return right_matrix(r).apply(s); }

  /// Actions are unital, associative and commute with each other.
  bool is_valid() const {
    const F& f = field();
    const auto id = Matrix<F>::identity(f, dim_);
    if (!(left_matrix(left_->unit()) == id) || !(right_matrix(right_->unit()) == id)) return false;
    for (std::size_t i = 0; i < left_->dim(); ++i)
      for (std::size_t j = 0; j < left_->dim(); ++j)
        if (!(left_action_[i] * left_action_[j] ==
              left_matrix(to_dense(f, left_->basis_product(i, j), left_->dim()))))
          return false;
    // s (r_i r_j) = (s r_i) r_j, i.e. R_{ij} = R_j R_i on columns.
    for (std::size_t i = 0; i < right_->dim(); ++i)
      for (std::size_t j = 0; j < right_->dim(); ++j)
        if (!(right_action_[j] * right_action_[i] ==
              right_matrix(to_dense(f, right_->basis_product(i, j), right_->dim()))))
          return false;
    for (const auto& l : left_action_)
      for (const auto& r : right_action_)
        if (!(l * r == r * l)) return false;
    return true;
  }

  /// Left module over L (x) R^op, presented by the generators of L then R.
  Module<F> enveloping_module() const {
    Module<F> m{field(), dim_, {}};
    for (const auto& g : left_->generators()) m.actions.push_back(left_matrix(g));
    for (const auto& g : right_->generators()) m.actions.push_back(right_matrix(g));
    return m;
  }
  Module<F> left_module() const {
    Module<F> m{field(), dim_, {}};
    for (const auto& g : left_->generators()) m.actions.push_back(left_matrix(g));
    return m;
  }
  /// The right R-module, as a left R^op-module.
  Module<F> right_module() const {
    Module<F> m{field(), dim_, {}};
    for (const auto& g : right_->generators()) m.actions.push_back(right_matrix(g));
    return m;
  }

  /// S^L-style invariants: elements with l s = s l, for L = R.
  std::vector<Vec<F>> invariants() const {
    if (!(*left_ == *right_)) throw Error("invariants need a bimodule over one algebra");
    Echelon<F> eqs(field(), dim_);
    for (const auto& g : left_->generators()) {
      auto m = left_matrix(g) - right_matrix(g);
      for (std::size_t r = 0; r < dim_; ++r) eqs.insert(m.row(r));
    }
    return span_basis(field(), eqs.kernel(), dim_);
  }

 private:
  Matrix<F> combine(const std::vector<Matrix<F>>& table, const Vec<F>& coeffs) const {
    if (coeffs.size() != table.size()) throw DimensionMismatch("acting element length");
    const F& f = field();
    Matrix<F> out(f, dim_, dim_);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!f.is_zero(coeffs[i])) out = out + table[i].scaled(coeffs[i]);
    return out;
  }

  AlgebraPtr<F> left_;
  AlgebraPtr<F> right_;
  std::size_t dim_;
  std::vector<Matrix<F>> left_action_;
  std::vector<Matrix<F>> right_action_;
};

/// A as an A-A bimodule.
template <Field F>
Bimodule<F> regular_bimodule(const AlgebraPtr<F>& a) {
  std::vector<Matrix<F>> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    l.push_back(a->left_mul(a->basis(i)));
    r.push_back(a->right_mul(a->basis(i)));
  }
  return Bimodule<F>(a, a, a->dim(), std::move(l), std::move(r));
}

/// Restriction of scalars along subalgebra embeddings on each side.
template <Field F>
Bimodule<F> restrict_bimodule(const Bimodule<F>& m, const SubalgebraEmbedding<F>& left,
                              const SubalgebraEmbedding<F>& right) {
  std::vector<Matrix<F>> l, r;
  for (const auto& b : left.basis()) l.push_back(m.left_matrix(b));
  for (const auto& b : right.basis()) r.push_back(m.right_matrix(b));
  return Bimodule<F>(left.induced(), right.induced(), m.dim(), std::move(l), std::move(r));
}

/// Basis of L-R bimodule maps M -> N, as N.dim x M.dim matrices.
template <Field F>
std::vector<Matrix<F>> bimodule_hom_space(const Bimodule<F>& m, const Bimodule<F>& n) {
  if (!(*m.left() == *n.left()) || !(*m.right() == *n.right()))
    throw Error("bimodules over different acting algebras");
  return hom_space(m.enveloping_module(), n.enveloping_module());
}

template <Field F>
std::optional<SummandWitness<F>> bimodule_summand_witness(const Bimodule<F>& x, const Bimodule<F>& y) {
  if (!(*x.left() == *y.left()) || !(*x.right() == *y.right()))
    throw Error("bimodules over different acting algebras");
  return summand_witness(x.enveloping_module(), y.enveloping_module());
}

}  // namespace morext
