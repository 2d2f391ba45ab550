/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/problem.hpp"

#include <map>
#include <utility>
#include <vector>

namespace efsmt {

using Box = std::map<VarId, Interval>;

/* Bernstein coefficients b_I, I ≤ D, of a polynomial over a box. Axes are the
 * variables of the polynomial that have non-degenerate ranges, ascending by
 * id; the last axis varies fastest in 'coeffs'. */
struct BernsteinTensor {
	std::vector<VarId> vars;
	std::vector<unsigned> degrees;
	std::vector<Rational> coeffs;
	Box box;

	std::size_t size() const { return coeffs.size(); }
	std::vector<unsigned> multi_index(std::size_t flat) const;
	std::size_t flat_index(const std::vector<unsigned> &idx) const;
	const Rational &at(const std::vector<unsigned> &idx) const { return coeffs[flat_index(idx)]; }
	/* Every index component is 0 or D_i. */
	bool is_corner(std::size_t flat) const;
	/* The box corner matching a corner multi-index. */
	Assignment corner_point(std::size_t flat) const;
	Rational min() const;
	Rational max() const;
};

/* C(n, k) as a rational; tabulated up to n = 16. */
const Rational &binomial(unsigned n, unsigned k);

/* q(t) = p(lo + t·(hi − lo)) per variable of 'box'; point ranges are
 * substituted as constants. */
Polynomial normalize_box(const Polynomial &p, const Box &box);

/* Conversion of a polynomial over the unit box to the Bernstein basis of
 * degree D. Per axis: b_i = Σ_{j≤i} C(i,j)/C(D,j)·a_j. 'box' is recorded as
 * the region the unit box stands for. Throws Error(Degenerate) when some
 * D_i is below the degree of p in that variable. */
BernsteinTensor to_bernstein(const Polynomial &unit, const std::vector<VarId> &vars,
                             const std::vector<unsigned> &degrees, const Box &box);

/* Tensor of p over box, with D the per-variable degree of p. */
BernsteinTensor bernstein_of(const Polynomial &p, const Box &box);

/* de Casteljau split of axis 'axis' at parameter 'at'. */
std::pair<BernsteinTensor, BernsteinTensor>
subdivide(const BernsteinTensor &t, std::size_t axis, const Rational &at = Rational(1, 2));

struct Verdict3 {
	enum class Kind { Proved, Refuted, Undecided };
	Kind kind = Kind::Undecided;
	Assignment witness;	/* Refuted only */
	unsigned boxes = 0;	/* sub-boxes visited */

	bool proved() const { return kind == Kind::Proved; }
	bool refuted() const { return kind == Kind::Refuted; }
	bool undecided() const { return kind == Kind::Undecided; }
};
using AtomVerdict = Verdict3;

/* ∀ box: atom. Throws Error(Unsupported) for = and ≠. */
AtomVerdict check_atom(const PolyCmp &atom, const Box &box, unsigned max_depth = 10);

/* ∀ box: ⋀ rules, each (⋀ assumptions) → guarantee. A rule holds on a
 * sub-box when an assumption is proved false there or the guarantee is
 * proved; it is refuted when a box corner satisfies every assumption exactly
 * and violates the guarantee. */
Verdict3 check_ag(const std::vector<AGRule> &rules, const Box &box, unsigned max_depth = 10);

} // namespace efsmt
