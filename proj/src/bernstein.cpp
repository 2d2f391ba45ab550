/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/bernstein.hpp"

#include <algorithm>

namespace efsmt {

namespace {

constexpr unsigned kTableDegree = 16;

std::vector<std::vector<Rational>> make_table()
{
	std::vector<std::vector<Rational>> t(kTableDegree + 1);
	for (unsigned n = 0; n <= kTableDegree; ++n) {
		t[n].resize(n + 1, 1);
		for (unsigned k = 1; k < n; ++k)
			t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
	}
	return t;
}

std::size_t axis_len(const BernsteinTensor &t, std::size_t k) { return t.degrees[k] + 1; }

std::size_t stride(const BernsteinTensor &t, std::size_t k)
{
	std::size_t s = 1;
	for (std::size_t j = k + 1; j < t.degrees.size(); ++j)
		s *= axis_len(t, j);
	return s;
}

/* Calls f(base, stride) for every fiber of axis k. */
template <class F>
void for_each_fiber(const BernsteinTensor &t, std::size_t k, F f)
{
	std::size_t s = stride(t, k), n = axis_len(t, k);
	std::size_t outer = t.coeffs.size() / (n * s);
	for (std::size_t o = 0; o < outer; ++o)
		for (std::size_t in = 0; in < s; ++in)
			f(o * n * s + in, s);
}

const Interval &range_in(const Box &box, VarId v)
{
	auto it = box.find(v);
	if (it == box.end())
		throw Error(ErrorKind::Usage, "variable #" + std::to_string(v) + " has no range in the box");
	return it->second;
}

} // namespace

const Rational &binomial(unsigned n, unsigned k)
{
	static const auto table = make_table();
	static thread_local std::map<std::pair<unsigned, unsigned>, Rational> extra;
	if (k > n)
		throw Error(ErrorKind::Usage, "binomial with k > n");
	if (n <= kTableDegree)
		return table[n][k];
	auto [it, fresh] = extra.try_emplace({n, k});
	if (fresh) {
		Integer r;
		mpz_bin_uiui(r.get_mpz_t(), n, k);
		it->second = Rational(r);
	}
	return it->second;
}

std::vector<unsigned> BernsteinTensor::multi_index(std::size_t flat) const
{
	std::vector<unsigned> idx(degrees.size());
	for (std::size_t k = degrees.size(); k-- > 0;) {
		idx[k] = flat % (degrees[k] + 1);
		flat /= degrees[k] + 1;
	}
	return idx;
}

std::size_t BernsteinTensor::flat_index(const std::vector<unsigned> &idx) const
{
	std::size_t f = 0;
	for (std::size_t k = 0; k < degrees.size(); ++k)
		f = f * (degrees[k] + 1) + idx[k];
	return f;
}

bool BernsteinTensor::is_corner(std::size_t flat) const
{
	auto idx = multi_index(flat);
	for (std::size_t k = 0; k < idx.size(); ++k)
		if (idx[k] != 0 && idx[k] != degrees[k])
			return false;
	return true;
}

Assignment BernsteinTensor::corner_point(std::size_t flat) const
{
	Assignment a;
	for (const auto &[v, r] : box)
		a.set(v, r.lo);
	auto idx = multi_index(flat);
	for (std::size_t k = 0; k < idx.size(); ++k) {
		const Interval &r = box.at(vars[k]);
		a.set(vars[k], idx[k] == 0 ? r.lo : r.hi);
	}
	return a;
}

Rational BernsteinTensor::min() const { return *std::min_element(coeffs.begin(), coeffs.end()); }
Rational BernsteinTensor::max() const { return *std::max_element(coeffs.begin(), coeffs.end()); }

Polynomial normalize_box(const Polynomial &p, const Box &box)
{
	Assignment points;
	std::map<VarId, AffineMap> maps;
	for (VarId v : p.vars()) {
		const Interval &r = range_in(box, v);
		if (r.is_point())
			points.set(v, r.lo);
		else
			maps[v] = AffineMap{r.width(), r.lo};
	}
	return p.substitute(points).affine_compose(maps);
}

BernsteinTensor to_bernstein(const Polynomial &unit, const std::vector<VarId> &vars,
                             const std::vector<unsigned> &degrees, const Box &box)
{
	BernsteinTensor t{vars, degrees, {}, box};
	std::size_t total = 1;
	for (unsigned d : degrees)
		total *= d + 1;
	t.coeffs.assign(total, 0);
	for (const auto &[powers, coeff] : unit.terms()) {
		std::vector<unsigned> idx(vars.size(), 0);
		for (auto [v, e] : powers) {
			auto it = std::find(vars.begin(), vars.end(), v);
			if (it == vars.end())
				throw Error(ErrorKind::Degenerate,
				            "polynomial variable #" + std::to_string(v) + " is not a tensor axis");
			std::size_t k = it - vars.begin();
			if (e > degrees[k])
				throw Error(ErrorKind::Degenerate,
				            "degree vector too small for variable #" + std::to_string(v));
			idx[k] = e;
		}
		t.coeffs[t.flat_index(idx)] += coeff;
	}
	for (std::size_t k = 0; k < vars.size(); ++k) {
		unsigned D = degrees[k];
		for_each_fiber(t, k, [&](std::size_t base, std::size_t s) {
			std::vector<Rational> a(D + 1), b(D + 1, 0);
			for (unsigned j = 0; j <= D; ++j)
				a[j] = t.coeffs[base + j * s];
			for (unsigned i = 0; i <= D; ++i)
				for (unsigned j = 0; j <= i; ++j)
					b[i] += binomial(i, j) / binomial(D, j) * a[j];
			for (unsigned i = 0; i <= D; ++i)
				t.coeffs[base + i * s] = b[i];
		});
	}
	return t;
}

BernsteinTensor bernstein_of(const Polynomial &p, const Box &box)
{
	Polynomial unit = normalize_box(p, box);
	std::vector<VarId> vars;
	std::vector<unsigned> degrees;
	for (VarId v : unit.vars()) {
		vars.push_back(v);
		degrees.push_back(unit.degree_in(v));
	}
	return to_bernstein(unit, vars, degrees, box);
}

std::pair<BernsteinTensor, BernsteinTensor>
subdivide(const BernsteinTensor &t, std::size_t axis, const Rational &at)
{
	BernsteinTensor left = t, right = t;
	if (axis >= t.vars.size())	/* constant along every axis */
		return {std::move(left), std::move(right)};
	unsigned D = t.degrees[axis];
	Rational keep = 1 - at;
	for_each_fiber(t, axis, [&](std::size_t base, std::size_t s) {
		std::vector<Rational> b(D + 1);
		for (unsigned i = 0; i <= D; ++i)
			b[i] = t.coeffs[base + i * s];
		for (unsigned r = 0; r <= D; ++r) {
			left.coeffs[base + r * s] = b[0];
			right.coeffs[base + (D - r) * s] = b[D - r];
			for (unsigned i = 0; i + r < D; ++i)
				b[i] = keep * b[i] + at * b[i + 1];
		}
	});
	VarId v = t.vars[axis];
	const Interval &r = t.box.at(v);
	Rational cut = r.lo + at * r.width();
	left.box[v] = Interval(r.lo, cut);
	right.box[v] = Interval(cut, r.hi);
	return {std::move(left), std::move(right)};
}

namespace {

void require_inequality(const PolyCmp &c)
{
	if (c.op == CmpOp::Eq || c.op == CmpOp::Ne)
		throw Error(ErrorKind::Unsupported,
		            std::string("Bernstein checker does not handle '") + op_symbol(c.op) + "'");
}

bool all_satisfy(const BernsteinTensor &t, CmpOp op, const Rational &rhs)
{
	return std::all_of(t.coeffs.begin(), t.coeffs.end(),
	                   [&](const Rational &b) { return compare(b, op, rhs); });
}

bool none_satisfy(const BernsteinTensor &t, CmpOp op, const Rational &rhs)
{
	return std::none_of(t.coeffs.begin(), t.coeffs.end(),
	                    [&](const Rational &b) { return compare(b, op, rhs); });
}

/* Widest axis of the box among 'vars', lowest id on ties. */
std::optional<VarId> widest(const Box &box, const std::set<VarId> &vars)
{
	std::optional<VarId> best;
	Rational w = 0;
	for (VarId v : vars) {
		Rational x = box.at(v).width();
		if (x > w) {
			w = x;
			best = v;
		}
	}
	return best;
}

BernsteinTensor with_box(BernsteinTensor t, const Box &box)
{
	t.box = box;
	return t;
}

std::pair<BernsteinTensor, BernsteinTensor> split_on(const BernsteinTensor &t, VarId v,
                                                     const Box &lo, const Box &hi)
{
	auto it = std::find(t.vars.begin(), t.vars.end(), v);
	if (it == t.vars.end())
		return {with_box(t, lo), with_box(t, hi)};
	auto [a, b] = subdivide(t, it - t.vars.begin());
	return {with_box(std::move(a), lo), with_box(std::move(b), hi)};
}

Verdict3 combine(Verdict3 a, Verdict3 b)
{
	Verdict3 r;
	r.boxes = a.boxes + b.boxes;
	if (a.refuted() || b.refuted()) {
		r.kind = Verdict3::Kind::Refuted;
		r.witness = a.refuted() ? std::move(a.witness) : std::move(b.witness);
	} else if (a.proved() && b.proved())
		r.kind = Verdict3::Kind::Proved;
	return r;
}

Verdict3 atom_rec(const PolyCmp &c, const BernsteinTensor &t, unsigned depth)
{
	Verdict3 v;
	v.boxes = 1;
	if (all_satisfy(t, c.op, c.rhs)) {
		v.kind = Verdict3::Kind::Proved;
		return v;
	}
	for (std::size_t f = 0; f < t.size(); ++f)
		if (t.is_corner(f) && !compare(t.coeffs[f], c.op, c.rhs)) {
			v.kind = Verdict3::Kind::Refuted;
			v.witness = t.corner_point(f);
			return v;
		}
	std::set<VarId> axes(t.vars.begin(), t.vars.end());
	auto dim = widest(t.box, axes);
	if (depth == 0 || !dim)
		return v;
	auto [a, b] = subdivide(t, std::find(t.vars.begin(), t.vars.end(), *dim) - t.vars.begin());
	Verdict3 left = atom_rec(c, a, depth - 1);
	if (left.refuted()) {
		left.boxes += 1;
		return left;
	}
	Verdict3 r = combine(std::move(left), atom_rec(c, b, depth - 1));
	r.boxes += 1;
	return r;
}

struct RuleState {
	const AGRule *rule;
	std::set<VarId> vars;	/* non-degenerate variables of the rule */
	std::vector<BernsteinTensor> assume;
	BernsteinTensor guarantee;
};

bool holds_at(const AGRule &r, const Assignment &a)
{
	for (const PolyCmp &c : r.assumptions)
		if (!c.holds(a))
			return true;
	return r.guarantee.holds(a);
}

Verdict3 rule_rec(const RuleState &s, const Box &box, unsigned depth)
{
	Verdict3 v;
	v.boxes = 1;
	const AGRule &r = *s.rule;
	for (std::size_t i = 0; i < s.assume.size(); ++i)
		if (none_satisfy(s.assume[i], r.assumptions[i].op, r.assumptions[i].rhs)) {
			v.kind = Verdict3::Kind::Proved;
			return v;
		}
	if (all_satisfy(s.guarantee, r.guarantee.op, r.guarantee.rhs)) {
		v.kind = Verdict3::Kind::Proved;
		return v;
	}
	std::vector<VarId> axes(s.vars.begin(), s.vars.end());
	for (std::size_t mask = 0; mask < (std::size_t(1) << axes.size()); ++mask) {
		Assignment pt;
		for (const auto &[u, range] : box)
			pt.set(u, range.lo);
		for (std::size_t k = 0; k < axes.size(); ++k)
			pt.set(axes[k], (mask >> k & 1) ? box.at(axes[k]).hi : box.at(axes[k]).lo);
		if (!holds_at(r, pt)) {
			v.kind = Verdict3::Kind::Refuted;
			v.witness = std::move(pt);
			return v;
		}
	}
	auto dim = widest(box, s.vars);
	if (depth == 0 || !dim)
		return v;
	const Interval &range = box.at(*dim);
	Box lo = box, hi = box;
	lo[*dim] = Interval(range.lo, range.midpoint());
	hi[*dim] = Interval(range.midpoint(), range.hi);
	RuleState a{s.rule, s.vars, {}, {}}, b{s.rule, s.vars, {}, {}};
	for (const BernsteinTensor &t : s.assume) {
		auto [x, y] = split_on(t, *dim, lo, hi);
		a.assume.push_back(std::move(x));
		b.assume.push_back(std::move(y));
	}
	std::tie(a.guarantee, b.guarantee) = split_on(s.guarantee, *dim, lo, hi);
	Verdict3 left = rule_rec(a, lo, depth - 1);
	if (left.refuted()) {
		left.boxes += 1;
		return left;
	}
	Verdict3 res = combine(std::move(left), rule_rec(b, hi, depth - 1));
	res.boxes += 1;
	return res;
}

} // namespace

AtomVerdict check_atom(const PolyCmp &atom, const Box &box, unsigned max_depth)
{
	require_inequality(atom);
	return atom_rec(atom, bernstein_of(atom.lhs, box), max_depth);
}

Verdict3 check_ag(const std::vector<AGRule> &rules, const Box &box, unsigned max_depth)
{
	Verdict3 total;
	total.kind = Verdict3::Kind::Proved;
	for (const AGRule &r : rules) {
		RuleState s{&r, {}, {}, {}};
		for (const PolyCmp &c : r.assumptions) {
			require_inequality(c);
			s.assume.push_back(bernstein_of(c.lhs, box));
		}
		require_inequality(r.guarantee);
		s.guarantee = bernstein_of(r.guarantee.lhs, box);
		for (const BernsteinTensor *t : {&s.guarantee})
			s.vars.insert(t->vars.begin(), t->vars.end());
		for (const BernsteinTensor &t : s.assume)
			s.vars.insert(t.vars.begin(), t.vars.end());
		Verdict3 v = rule_rec(s, box, max_depth);
		total.boxes += v.boxes;
		if (v.refuted()) {
			v.boxes = total.boxes;
			return v;
		}
		if (v.undecided())
			total.kind = Verdict3::Kind::Undecided;
	}
	return total;
}

} // namespace efsmt
