#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "morext/module.hpp"

namespace morext {

class NotIdempotent : public Error {
 public:
  NotIdempotent() : Error("matrix is not idempotent") {}
};

/// A left B-module N with dual-basis data. Elements of N are coordinate
/// vectors of length m; a functional N -> B is an m x dim(B) matrix acting
/// on the right of row vectors, so n^f = n F.
template <Field F>
struct DualPair {
  Matrix<F> functional;
  Vec<F> element;
};

template <Field F>
class Progenerator {
 public:
  Progenerator(AlgebraPtr<F> base, std::size_t m, std::vector<Matrix<F>> action,
               std::vector<DualPair<F>> dual_pairs, std::vector<DualPair<F>> gen_pairs)
      : base_(std::move(base)), m_(m), action_(std::move(action)),
        dual_pairs_(std::move(dual_pairs)), gen_pairs_(std::move(gen_pairs)) {
    if (action_.size() != base_->dim()) throw DimensionMismatch("progenerator action table");
    build_dual_basis();
  }

  const AlgebraPtr<F>& base() const { return base_; }
  const F& field() const { return base_->field(); }
  std::size_t dim() const { return m_; }
  const std::vector<Matrix<F>>& action() const { return action_; }
  const std::vector<DualPair<F>>& dual_pairs() const { return dual_pairs_; }
  const std::vector<DualPair<F>>& gen_pairs() const { return gen_pairs_; }

  /// b . n for b in B coordinates.
  Matrix<F> left_matrix(const Vec<F>& b) const {
    Matrix<F> out(field(), m_, m_);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!field().is_zero(b[i])) out = out + action_[i].scaled(b[i]);
    return out;
  }
  Vec<F> act(const Vec<F>& b, const Vec<F>& n) const { return left_matrix(b).apply(n); }

  /// n^f in B coordinates.
  Vec<F> evaluate(const Vec<F>& n, const Matrix<F>& functional) const {
    return functional.transpose().apply(n);
  }

  /// True when f is left B-linear: (b n)^f = b n^f.
  bool is_linear(const Matrix<F>& functional) const {
    if (functional.rows() != m_ || functional.cols() != base_->dim()) return false;
    auto ft = functional.transpose();
    for (std::size_t i = 0; i < base_->dim(); ++i)
      if (!(ft * action_[i] == base_->left_mul(base_->basis(i)) * ft)) return false;
    return true;
  }

  /// Basis of N* = Hom_B(N, B).
  const std::vector<Matrix<F>>& dual_basis() const { return dual_basis_; }
  std::size_t dual_dim() const { return dual_basis_.size(); }

  /// Coordinates of a B-linear functional in the N* basis.
  Vec<F> dual_coords(const Matrix<F>& functional) const {
    auto c = span_membership(field(), dual_flat_, functional.flat());
    if (!c) throw Error("functional is not B-linear");
    return *c;
  }

  /// Right B-action on N*: (rho b) has matrix F R_b^T, as a dual_dim square
  /// matrix in column convention.
  const Matrix<F>& dual_right_action(std::size_t i) const { return dual_right_[i]; }

  /// N as a left B-module over the generators of B.
  Module<F> as_module() const {
    Module<F> mod{field(), m_, {}};
    for (const auto& g : base_->generators()) mod.actions.push_back(left_matrix(g));
    return mod;
  }

 private:
  void build_dual_basis() {
    const F& f = field();
    const std::size_t db = base_->dim();
    // F^T L_g = lmul(g) F^T for generators g; unknown F(r, c) at r * db + c.
    Echelon<F> eqs(f, m_ * db);
    for (const auto& g : base_->generators()) {
      auto l = left_matrix(g);
      auto lb = base_->left_mul(g);
      for (std::size_t c = 0; c < db; ++c)
        for (std::size_t k = 0; k < m_; ++k) {
          // entry (c, k) of F^T L - lb F^T
          Vec<F> row(m_ * db, f.zero());
          for (std::size_t r = 0; r < m_; ++r) row[r * db + c] = f.add(row[r * db + c], l(r, k));
          for (std::size_t e = 0; e < db; ++e) row[k * db + e] = f.sub(row[k * db + e], lb(c, e));
          eqs.insert(row);
        }
    }
    for (auto& k : eqs.kernel()) {
      dual_flat_.push_back(k);
      dual_basis_.push_back(Matrix<F>::from_flat(f, m_, db, std::move(k)));
    }
    for (std::size_t i = 0; i < db; ++i) {
      auto rt = base_->right_mul(base_->basis(i)).transpose();
      Matrix<F> act(f, dual_dim(), dual_dim());
      for (std::size_t r = 0; r < dual_dim(); ++r) act.set_column(r, dual_coords(dual_basis_[r] * rt));
      dual_right_.push_back(std::move(act));
    }
  }

  AlgebraPtr<F> base_;
  std::size_t m_;
  std::vector<Matrix<F>> action_;
  std::vector<DualPair<F>> dual_pairs_;
  std::vector<DualPair<F>> gen_pairs_;
  std::vector<Matrix<F>> dual_basis_;
  std::vector<Vec<F>> dual_flat_;
  std::vector<Matrix<F>> dual_right_;
};

/// Re-checks sum_j n^{f_j} m_j = n on a basis, sum_k n_k^{g_k} = 1 and
/// B-linearity of every functional.
template <Field F>
bool verify_progenerator(const Progenerator<F>& n) {
  const F& f = n.field();
  const std::size_t m = n.dim();
  const auto& b = *n.base();
  for (const auto* pairs : {&n.dual_pairs(), &n.gen_pairs()})
    for (const auto& p : *pairs)
      if (p.element.size() != m || !n.is_linear(p.functional)) return false;
  for (std::size_t r = 0; r < m; ++r) {
    auto e = vec::unit(f, m, r);
    Vec<F> sum(m, f.zero());
    for (const auto& p : n.dual_pairs()) sum = vec::add(f, sum, n.act(n.evaluate(e, p.functional), p.element));
    if (!vec::equal(f, sum, e)) return false;
  }
  Vec<F> one = b.zero();
  for (const auto& p : n.gen_pairs()) one = vec::add(f, one, n.evaluate(p.element, p.functional));
  return vec::equal(f, one, b.unit());
}

namespace detail {

/// Left action of B on B^k (row vectors, coordinate (c, i) at c * db + i).
template <Field F>
std::vector<Matrix<F>> free_action(const Algebra<F>& b, std::size_t k) {
  const F& f = b.field();
  const std::size_t db = b.dim();
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < db; ++i) {
    auto l = b.left_mul(b.basis(i));
    Matrix<F> big(f, k * db, k * db);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < db; ++r)
        for (std::size_t s = 0; s < db; ++s) big(c * db + r, c * db + s) = l(r, s);
    out.push_back(std::move(big));
  }
  return out;
}

}  // namespace detail

/// N = B^n with coordinate functionals and standard generators. One
/// coordinate pair already gives m_1^{f_1} = 1, so the generator system is
/// that single pair.
template <Field F>
Progenerator<F> progenerator_free(const AlgebraPtr<F>& b, std::size_t n) {
  if (n == 0) throw Error("free progenerator needs rank >= 1");
  const F& f = b->field();
  const std::size_t db = b->dim(), m = n * db;
  std::vector<DualPair<F>> dual;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<F> fj(f, m, db);
    for (std::size_t i = 0; i < db; ++i) fj(j * db + i, i) = f.one();
    Vec<F> mj(m, f.zero());
    for (std::size_t i = 0; i < db; ++i) mj[j * db + i] = b->unit()[i];
    dual.push_back({std::move(fj), std::move(mj)});
  }
  std::vector<DualPair<F>> gen{dual.front()};
  return Progenerator<F>(b, m, detail::free_action(*b, n), std::move(dual), std::move(gen));
}

/// N = B^{1 x k} E for an idempotent E in M_k(B), given as k x k entries in
/// B coordinates. Absent when no generator system exists.
template <Field F>
std::optional<Progenerator<F>> progenerator_from_idempotent(const AlgebraPtr<F>& b, std::size_t k,
                                                            const std::vector<std::vector<Vec<F>>>& e) {
  const F& f = b->field();
  const std::size_t db = b->dim(), big = k * db;
  if (k == 0 || e.size() != k) throw DimensionMismatch("idempotent size");
  for (const auto& row : e) {
    if (row.size() != k) throw DimensionMismatch("idempotent size");
    for (const auto& x : row)
      if (x.size() != db) throw DimensionMismatch("idempotent entry");
  }
  // Right multiplication by E on B^{1 x k}: (v E)_t = sum_s v_s E_st.
  Matrix<F> right(f, big, big);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t) {
      auto r = b->right_mul(e[s][t]);
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t o = 0; o < db; ++o)
          if (!f.is_zero(r(o, i))) right(t * db + o, s * db + i) = f.add(right(t * db + o, s * db + i), r(o, i));
    }
  if (!(right * right == right)) throw NotIdempotent();

  // Basis of the image, as vectors in B^k.
  Echelon<F> image(f, big);
  for (std::size_t c = 0; c < big; ++c) image.insert(right.column(c));
  auto basis = image.basis();
  const std::size_t m = basis.size();
  if (m == 0) return std::nullopt;
  auto pivots = image.pivot_columns();
  auto coords = [&](const Vec<F>& v) {
    Vec<F> out;
    for (auto p : pivots) out.push_back(v[p]);
    return out;
  };

  auto free = detail::free_action(*b, k);
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < db; ++i) {
    Matrix<F> a(f, m, m);
    for (std::size_t r = 0; r < m; ++r) a.set_column(r, coords(free[i].apply(basis[r])));
    action.push_back(std::move(a));
  }
  std::vector<DualPair<F>> dual;
  for (std::size_t j = 0; j < k; ++j) {
    Matrix<F> fj(f, m, db);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i < db; ++i) fj(r, i) = basis[r][j * db + i];
    Vec<F> ej(big, f.zero());
    for (std::size_t i = 0; i < db; ++i) ej[j * db + i] = b->unit()[i];
    dual.push_back({std::move(fj), coords(right.apply(ej))});
  }
  Progenerator<F> n(b, m, std::move(action), std::move(dual), {});

  // Solve 1 = sum c_{r,s} (basis_r)^{rho_s} and fold coefficients into the functionals.
  std::vector<Vec<F>> values;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < n.dual_dim(); ++s) {
      values.push_back(n.evaluate(vec::unit(f, m, r), n.dual_basis()[s]));
      index.emplace_back(r, s);
    }
  auto c = span_membership(f, values, b->unit());
  if (!c) return std::nullopt;
  std::vector<DualPair<F>> gen;
  for (std::size_t r = 0; r < m; ++r) {
    Matrix<F> g(f, m, db);
    bool used = false;
    for (std::size_t t = 0; t < index.size(); ++t)
      if (index[t].first == r && !f.is_zero((*c)[t])) {
        g = g + n.dual_basis()[index[t].second].scaled((*c)[t]);
        used = true;
      }
    if (used) gen.push_back({std::move(g), vec::unit(f, m, r)});
  }
  return Progenerator<F>(b, m, n.action(), n.dual_pairs(), std::move(gen));
}

}  // namespace morext
