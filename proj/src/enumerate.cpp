/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/session.hpp"

#include <algorithm>

namespace efsmt {

namespace {

enum class Tri { False, True, Unknown };

Tri tri_not(Tri t)
{
	return t == Tri::Unknown ? t : t == Tri::True ? Tri::False : Tri::True;
}

struct QInterval {
	Rational lo, hi;
};

QInterval mul(const QInterval &a, const QInterval &b)
{
	Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
	return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

QInterval power(const QInterval &a, unsigned e)
{
	QInterval r{1, 1};
	for (unsigned i = 0; i < e; ++i)
		r = mul(r, a);
	if (e % 2 == 0 && a.lo < 0 && a.hi > 0)
		r.lo = 0;
	return r;
}

/* Index range [lo, hi] over the grid origin + k·step; Bool uses {0, 1}. */
struct Domain {
	Rational origin, step;
	Integer lo, hi;
	bool boolean = false;

	bool is_point() const { return lo == hi; }
	Rational value(const Integer &k) const { return origin + Rational(k) * step; }
};

class Search {
public:
	Search(const std::vector<VarDecl> &vars, const std::vector<Formula> &assertions,
	       SessionStats &stats)
	: vars_(vars), assertions_(assertions), stats_(stats)
	{
		for (std::size_t i = 0; i < vars_.size(); ++i)
			index_[vars_[i].id] = i;
		for (const Formula &f : assertions_) {
			std::vector<std::size_t> occ;
			for (VarId v : free_vars(f)) {
				auto it = index_.find(v);
				if (it == index_.end())
					throw Error(ErrorKind::Usage,
					            "assertion mentions a variable outside the session: #" +
					                    std::to_string(v));
				occ.push_back(it->second);
			}
			occurs_.push_back(std::move(occ));
		}
	}

	std::vector<Domain> initial() const
	{
		std::vector<Domain> d;
		for (const VarDecl &v : vars_) {
			if (is_bool(v.sort)) {
				d.push_back({0, 1, 0, 1, true});
				continue;
			}
			Rational origin = domain_min(v.sort);
			Rational step = 1;
			if (auto *f = std::get_if<FixedSort>(&v.sort))
				step = f->step;
			d.push_back({origin, step, 0, domain_size(v.sort) - 1, false});
		}
		return d;
	}

	/* Lexicographically-first total model inside 'dom' (declaration order,
	 * values ascending). */
	std::optional<Assignment> lex_first(std::vector<Domain> dom)
	{
		auto witness = dpll(dom);
		if (!witness)
			return std::nullopt;
		for (std::size_t i = 0; i < dom.size(); ++i) {
			while (!dom[i].is_point()) {
				Integer mid = (dom[i].lo + dom[i].hi) / 2;
				Rational wv = witness_value(*witness, i);
				if (wv <= dom[i].value(mid)) {
					dom[i].hi = mid;
					continue;
				}
				std::vector<Domain> lower = dom;
				lower[i].hi = mid;
				if (auto m = dpll(lower)) {
					dom = std::move(lower);
					witness = std::move(m);
				} else
					dom[i].lo = mid + 1;
			}
		}
		return witness;
	}

private:
	Rational witness_value(const Assignment &w, std::size_t i) const
	{
		const Value *v = w.find(vars_[i].id);
		if (auto *b = std::get_if<bool>(v))
			return *b ? 1 : 0;
		return std::get<Rational>(*v);
	}

	QInterval range_of(const std::vector<Domain> &dom, VarId v) const
	{
		const Domain &d = dom[index_.at(v)];
		return {d.value(d.lo), d.value(d.hi)};
	}

	Tri eval(const Formula &f, const std::vector<Domain> &dom) const
	{
		using K = Formula::Kind;
		switch (f.kind()) {
		case K::True: return Tri::True;
		case K::False: return Tri::False;
		case K::Atom: return eval_atom(f.atom(), dom);
		case K::Not: return tri_not(eval(f.children()[0], dom));
		case K::And:
		case K::Or: {
			bool is_and = f.kind() == K::And;
			Tri acc = is_and ? Tri::True : Tri::False;
			for (const Formula &c : f.children()) {
				Tri t = eval(c, dom);
				if (t == (is_and ? Tri::False : Tri::True))
					return t;
				if (t == Tri::Unknown)
					acc = Tri::Unknown;
			}
			return acc;
		}
		case K::Implies: {
			Tri a = eval(f.children()[0], dom);
			if (a == Tri::False)
				return Tri::True;
			Tri b = eval(f.children()[1], dom);
			if (b == Tri::True)
				return Tri::True;
			if (a == Tri::True)
				return b;
			return Tri::Unknown;
		}
		case K::Iff: {
			Tri a = eval(f.children()[0], dom), b = eval(f.children()[1], dom);
			if (a == Tri::Unknown || b == Tri::Unknown)
				return Tri::Unknown;
			return a == b ? Tri::True : Tri::False;
		}
		}
		return Tri::Unknown;
	}

	Tri eval_atom(const Atom &a, const std::vector<Domain> &dom) const
	{
		if (auto *b = std::get_if<BoolAtom>(&a)) {
			const Domain &d = dom[index_.at(b->var)];
			if (!d.is_point())
				return Tri::Unknown;
			return d.lo == 1 ? Tri::True : Tri::False;
		}
		const PolyCmp &c = std::get<PolyCmp>(a);
		QInterval sum{0, 0};
		for (const auto &[powers, coeff] : c.lhs.terms()) {
			QInterval t{coeff, coeff};
			for (auto [v, e] : powers)
				t = mul(t, power(range_of(dom, v), e));
			sum.lo += t.lo;
			sum.hi += t.hi;
		}
		bool all = compare(sum.lo, c.op, c.rhs) && compare(sum.hi, c.op, c.rhs);
		switch (c.op) {
		case CmpOp::Lt:
		case CmpOp::Le:
			if (compare(sum.hi, c.op, c.rhs))
				return Tri::True;
			return compare(sum.lo, c.op, c.rhs) ? Tri::Unknown : Tri::False;
		case CmpOp::Gt:
		case CmpOp::Ge:
			if (compare(sum.lo, c.op, c.rhs))
				return Tri::True;
			return compare(sum.hi, c.op, c.rhs) ? Tri::Unknown : Tri::False;
		case CmpOp::Eq:
			if (sum.lo == sum.hi)
				return all ? Tri::True : Tri::False;
			return (c.rhs < sum.lo || c.rhs > sum.hi) ? Tri::False : Tri::Unknown;
		case CmpOp::Ne:
			if (sum.lo == sum.hi)
				return all ? Tri::True : Tri::False;
			return (c.rhs < sum.lo || c.rhs > sum.hi) ? Tri::True : Tri::Unknown;
		}
		return Tri::Unknown;
	}

	/* Kleene evaluation plus unit propagation on boolean variables. Returns
	 * false on conflict; 'open' receives the undecided assertions. */
	bool propagate(std::vector<Domain> &dom, std::vector<std::size_t> &open) const
	{
		for (bool changed = true; changed;) {
			changed = false;
			open.clear();
			for (std::size_t j = 0; j < assertions_.size(); ++j) {
				Tri t = eval(assertions_[j], dom);
				if (t == Tri::False)
					return false;
				if (t == Tri::True)
					continue;
				open.push_back(j);
				std::optional<std::size_t> only;
				int undecided = 0;
				for (std::size_t i : occurs_[j])
					if (!dom[i].is_point()) {
						undecided++;
						only = i;
					}
				if (undecided != 1 || !dom[*only].boolean)
					continue;
				Tri val[2];
				for (int b = 0; b < 2; ++b) {
					dom[*only].lo = dom[*only].hi = b;
					val[b] = eval(assertions_[j], dom);
				}
				if (val[0] == Tri::False && val[1] == Tri::False)
					return false;
				if (val[0] == Tri::False || val[1] == Tri::False) {
					int forced = val[0] == Tri::False ? 1 : 0;
					dom[*only].lo = dom[*only].hi = forced;
					changed = true;
				} else {
					dom[*only].lo = 0;
					dom[*only].hi = 1;
				}
			}
		}
		return true;
	}

	std::optional<Assignment> dpll(std::vector<Domain> dom)
	{
		stats_.nodes++;
		std::vector<std::size_t> open;
		if (!propagate(dom, open)) {
			stats_.conflicts++;
			return std::nullopt;
		}
		if (open.empty()) {
			Assignment m;
			for (std::size_t i = 0; i < dom.size(); ++i) {
				if (dom[i].boolean)
					m.set_bool(vars_[i].id, dom[i].lo == 1);
				else
					m.set(vars_[i].id, dom[i].value(dom[i].lo));
			}
			return m;
		}
		std::size_t best = open.front();
		int best_count = -1;
		for (std::size_t j : open) {
			int n = 0;
			for (std::size_t i : occurs_[j])
				n += !dom[i].is_point();
			if (best_count < 0 || n < best_count) {
				best = j;
				best_count = n;
			}
		}
		std::size_t var = dom.size();
		for (std::size_t i : occurs_[best])
			if (!dom[i].is_point() && i < var)
				var = i;
		if (var == dom.size())
			throw Error(ErrorKind::Internal, "undecided assertion with all variables fixed");
		Integer mid = (dom[var].lo + dom[var].hi) / 2;
		std::vector<Domain> lower = dom;
		lower[var].hi = mid;
		if (auto m = dpll(std::move(lower)))
			return m;
		dom[var].lo = mid + 1;
		return dpll(std::move(dom));
	}

	const std::vector<VarDecl> &vars_;
	const std::vector<Formula> &assertions_;
	SessionStats &stats_;
	std::map<VarId, std::size_t> index_;
	std::vector<std::vector<std::size_t>> occurs_;
};

class EnumSession final : public SolverSession {
public:
	explicit EnumSession(std::vector<VarDecl> vars) : SolverSession(std::move(vars))
	{
		for (const VarDecl &d : vars_)
			if (is_real(d.sort))
				throw Error(ErrorKind::Unsupported,
				            "enumeration backend cannot handle real variable " + d.name);
		std::sort(vars_.begin(), vars_.end(), [](auto &a, auto &b) { return a.id < b.id; });
	}

	std::unique_ptr<SolverSession> fresh() const override
	{
		return make_enum_session(vars_);
	}
	const char *backend_name() const override { return "enum"; }

protected:
	CheckResult do_check(const std::vector<Formula> &live) override
	{
		detail::Preprocessed pre = detail::propagate_units(live, vars_);
		if (pre.conflict)
			return CheckResult::unsat();
		std::vector<VarDecl> free;
		for (const VarDecl &d : vars_)
			if (!pre.bindings.contains(d.id))
				free.push_back(d);
		Search s(free, pre.rest, stats_);
		auto m = s.lex_first(s.initial());
		if (!m)
			return CheckResult::unsat();
		return CheckResult::sat(pre.bindings.merged(*m));
	}
};

} // namespace

std::unique_ptr<SolverSession> make_enum_session(std::vector<VarDecl> vars)
{
	return std::make_unique<EnumSession>(std::move(vars));
}

} // namespace efsmt
