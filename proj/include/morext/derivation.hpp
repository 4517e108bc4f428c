#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "morext/extension.hpp"

namespace morext {

struct DerivationFlags {
  bool vanish_on_b = true;
  bool central = false;
};

/// Basis of a space of derivations A -> S, each a dim(S) x dim(A) matrix
/// whose column j is D(e_j).
template <Field F>
struct DerivationSpace {
  DerivationFlags flags;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Matrix<F>> basis;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

/// Accumulates a sparse linear equation keyed by unknown index.
template <Field F>
class EquationBuilder {
 public:
  explicit EquationBuilder(const F& f) : f_(f) {}
  void add(std::size_t var, const typename F::value_type& c) {
    if (f_.is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(var, c);
    if (!fresh) it->second = f_.add(it->second, c);
  }
  SparseRow<F> take() {
    SparseRow<F> row;
    for (auto& [v, c] : terms_)
      if (!f_.is_zero(c)) row.emplace_back(v, c);
    terms_.clear();
    return row;
  }

 private:
  const F& f_;
  std::map<std::size_t, typename F::value_type> terms_;
};

}  // namespace detail

/// Solves the Leibniz system D(xy) = D(x) y + x D(y) on dim(S) x dim(A)
/// matrices, plus D(B) = 0 and D(A) in S^A when flagged. Leibniz is imposed
/// for x in {1} and a generating set of A, which forces it for all x.
template <Field F>
DerivationSpace<F> derivation_space(const Extension<F>& ext, const Bimodule<F>& s, DerivationFlags flags) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const std::size_t d = a.dim(), ds = s.dim(), unknowns = ds * d;
  auto var = [d](std::size_t r, std::size_t c) { return r * d + c; };
  Echelon<F> eqs(f, unknowns);
  detail::EquationBuilder<F> eq(f);

  std::vector<Vec<F>> firsts{a.unit()};
  for (const auto& g : a.generators()) firsts.push_back(g);
  std::vector<Matrix<F>> right_basis;
  for (std::size_t j = 0; j < d; ++j) right_basis.push_back(s.right_matrix(a.basis(j)));

  for (const auto& g : firsts) {
    auto lg = s.left_matrix(g);
    for (std::size_t j = 0; j < d; ++j) {
      auto gx = a.mul(g, a.basis(j));
      const auto& rj = right_basis[j];
      for (std::size_t r = 0; r < ds; ++r) {
        for (std::size_t c = 0; c < d; ++c) eq.add(var(r, c), gx[c]);
        for (std::size_t t = 0; t < ds; ++t) {
          if (!f.is_zero(rj(r, t)))
            for (std::size_t c = 0; c < d; ++c) eq.add(var(t, c), f.neg(f.mul(rj(r, t), g[c])));
          eq.add(var(t, j), f.neg(lg(r, t)));
        }
        eqs.insert(eq.take());
      }
    }
  }
  if (flags.vanish_on_b)
    for (const auto& b : ext.b().basis())
      for (std::size_t r = 0; r < ds; ++r) {
        for (std::size_t c = 0; c < d; ++c) eq.add(var(r, c), b[c]);
        eqs.insert(eq.take());
      }
  if (flags.central)
    for (const auto& g : a.generators()) {
      auto comm = s.left_matrix(g) - s.right_matrix(g);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t r = 0; r < ds; ++r) {
          for (std::size_t t = 0; t < ds; ++t) eq.add(var(t, j), comm(r, t));
          eqs.insert(eq.take());
        }
    }

  DerivationSpace<F> out{flags, d, ds, {}};
  for (auto& k : eqs.kernel()) out.basis.push_back(Matrix<F>::from_flat(f, ds, d, std::move(k)));
  return out;
}

template <Field F>
DerivationSpace<F> derivation_space(const Extension<F>& ext, DerivationFlags flags) {
  return derivation_space(ext, regular_bimodule(ext.a()), flags);
}

/// Checks the defining identities on every basis pair.
template <Field F>
bool is_derivation(const Extension<F>& ext, const Bimodule<F>& s, const Matrix<F>& dmap, DerivationFlags flags) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const std::size_t d = a.dim();
  if (dmap.rows() != s.dim() || dmap.cols() != d) return false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto lhs = dmap.apply(to_dense(f, a.basis_product(i, j), d));
      auto rhs = vec::add(f, s.act_right(dmap.column(i), a.basis(j)), s.act_left(a.basis(i), dmap.column(j)));
      if (!vec::equal(f, lhs, rhs)) return false;
    }
  if (flags.vanish_on_b)
    for (const auto& b : ext.b().basis())
      if (!vec::is_zero(f, dmap.apply(b))) return false;
  if (flags.central)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i)
        if (!vec::equal(f, s.act_left(a.basis(i), dmap.column(j)), s.act_right(dmap.column(j), a.basis(i))))
          return false;
  return true;
}

/// ad_v : x -> v x - x v.
template <Field F>
Matrix<F> inner_derivation(const Algebra<F>& a, const Vec<F>& v) {
  return a.left_mul(v) - a.right_mul(v);
}

/// Span of {ad_v : v in V_A(B)}; dimension dim V - dim C.
template <Field F>
std::vector<Matrix<F>> inner_derivation_space(const Extension<F>& ext) {
  const F& f = ext.field();
  const std::size_t d = ext.dim();
  std::vector<Vec<F>> flat;
  for (const auto& v : ext.centralizer_basis()) flat.push_back(inner_derivation(ext.algebra(), v).flat());
  std::vector<Matrix<F>> out;
  for (auto& b : span_basis(f, flat, d * d)) out.push_back(Matrix<F>::from_flat(f, d, d, std::move(b)));
  return out;
}

}  // namespace morext
