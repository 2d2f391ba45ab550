/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/formula.hpp"

#include <algorithm>

namespace efsmt {

CmpOp negate(CmpOp op)
{
	switch (op) {
	case CmpOp::Lt: return CmpOp::Ge;
	case CmpOp::Le: return CmpOp::Gt;
	case CmpOp::Gt: return CmpOp::Le;
	case CmpOp::Ge: return CmpOp::Lt;
	case CmpOp::Eq: return CmpOp::Ne;
	case CmpOp::Ne: return CmpOp::Eq;
	}
	return op;
}

CmpOp mirror(CmpOp op)
{
	switch (op) {
	case CmpOp::Lt: return CmpOp::Gt;
	case CmpOp::Le: return CmpOp::Ge;
	case CmpOp::Gt: return CmpOp::Lt;
	case CmpOp::Ge: return CmpOp::Le;
	default: return op;
	}
}

bool compare(const Rational &lhs, CmpOp op, const Rational &rhs)
{
	switch (op) {
	case CmpOp::Lt: return lhs < rhs;
	case CmpOp::Le: return lhs <= rhs;
	case CmpOp::Gt: return lhs > rhs;
	case CmpOp::Ge: return lhs >= rhs;
	case CmpOp::Eq: return lhs == rhs;
	case CmpOp::Ne: return lhs != rhs;
	}
	return false;
}

const char *op_symbol(CmpOp op)
{
	switch (op) {
	case CmpOp::Lt: return "<";
	case CmpOp::Le: return "<=";
	case CmpOp::Gt: return ">";
	case CmpOp::Ge: return ">=";
	case CmpOp::Eq: return "=";
	case CmpOp::Ne: return "distinct";
	}
	return "?";
}

bool PolyCmp::holds(const Assignment &a) const
{
	return compare(lhs.evaluate(a), op, rhs);
}

PolyCmp make_cmp(const Polynomial &lhs, CmpOp op, const Polynomial &rhs)
{
	Polynomial d = lhs - rhs;
	Rational c = d.constant();
	d -= Polynomial(c);
	return PolyCmp{std::move(d), op, -c};
}

struct Formula::Node {
	Kind kind;
	std::optional<Atom> atom;
	std::vector<Formula> kids;
};

Formula::Formula() : Formula(top()) {}

Formula Formula::top()
{
	static const Formula t(std::make_shared<const Node>(Node{Kind::True, std::nullopt, {}}));
	return t;
}

Formula Formula::bottom()
{
	static const Formula f(std::make_shared<const Node>(Node{Kind::False, std::nullopt, {}}));
	return f;
}

Formula Formula::atom(Atom a)
{
	return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

Formula Formula::cmp(const Polynomial &lhs, CmpOp op, const Rational &rhs)
{
	return atom(PolyCmp{lhs, op, rhs});
}

Formula Formula::boolean(VarId v)
{
	return atom(BoolAtom{v});
}

Formula Formula::negation(Formula f)
{
	return Formula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, {std::move(f)}}));
}

Formula Formula::conj(std::vector<Formula> fs)
{
	if (fs.empty())
		return top();
	if (fs.size() == 1)
		return fs.front();
	return Formula(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::move(fs)}));
}

Formula Formula::disj(std::vector<Formula> fs)
{
	if (fs.empty())
		return bottom();
	if (fs.size() == 1)
		return fs.front();
	return Formula(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::move(fs)}));
}

Formula Formula::implies(Formula a, Formula b)
{
	return Formula(std::make_shared<const Node>(
		Node{Kind::Implies, std::nullopt, {std::move(a), std::move(b)}}));
}

Formula Formula::iff(Formula a, Formula b)
{
	return Formula(std::make_shared<const Node>(
		Node{Kind::Iff, std::nullopt, {std::move(a), std::move(b)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom &Formula::atom() const
{
	if (!node_->atom)
		throw std::logic_error("formula is not an atom");
	return *node_->atom;
}

std::span<const Formula> Formula::children() const { return node_->kids; }

bool operator==(const Formula &a, const Formula &b)
{
	if (a.node_ == b.node_)
		return true;
	if (a.kind() != b.kind())
		return false;
	if (a.kind() == Formula::Kind::Atom)
		return a.atom() == b.atom();
	auto ka = a.children(), kb = b.children();
	return std::equal(ka.begin(), ka.end(), kb.begin(), kb.end());
}

Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }
Formula operator!(Formula a) { return Formula::negation(std::move(a)); }

bool evaluate(const Formula &f, const Assignment &a)
{
	using K = Formula::Kind;
	switch (f.kind()) {
	case K::True: return true;
	case K::False: return false;
	case K::Atom:
		if (auto *c = std::get_if<PolyCmp>(&f.atom()))
			return c->holds(a);
		return a.boolean(std::get<BoolAtom>(f.atom()).var);
	case K::Not: return !evaluate(f.children()[0], a);
	case K::And:
		for (const Formula &g : f.children())
			if (!evaluate(g, a))
				return false;
		return true;
	case K::Or:
		for (const Formula &g : f.children())
			if (evaluate(g, a))
				return true;
		return false;
	case K::Implies:
		return !evaluate(f.children()[0], a) || evaluate(f.children()[1], a);
	case K::Iff:
		return evaluate(f.children()[0], a) == evaluate(f.children()[1], a);
	}
	return false;
}

namespace {

Formula rebuild(const Formula &f, std::vector<Formula> kids)
{
	using K = Formula::Kind;
	switch (f.kind()) {
	case K::Not: return Formula::negation(std::move(kids[0]));
	case K::And: return Formula::conj(std::move(kids));
	case K::Or: return Formula::disj(std::move(kids));
	case K::Implies: return Formula::implies(std::move(kids[0]), std::move(kids[1]));
	case K::Iff: return Formula::iff(std::move(kids[0]), std::move(kids[1]));
	default: return f;
	}
}

} // namespace

Formula substitute(const Formula &f, const Assignment &a)
{
	if (a.empty())
		return f;
	using K = Formula::Kind;
	switch (f.kind()) {
	case K::True:
	case K::False:
		return f;
	case K::Atom:
		if (auto *c = std::get_if<PolyCmp>(&f.atom())) {
			Polynomial p = c->lhs.substitute(a);
			if (p.is_constant())
				return Formula::constant(compare(p.constant(), c->op, c->rhs));
			return Formula::cmp(make_cmp(p, c->op, Polynomial(c->rhs)));
		} else {
			VarId v = std::get<BoolAtom>(f.atom()).var;
			if (auto *val = a.find(v))
				if (auto *b = std::get_if<bool>(val))
					return Formula::constant(*b);
			return f;
		}
	default: {
		std::vector<Formula> kids;
		for (const Formula &g : f.children())
			kids.push_back(substitute(g, a));
		return rebuild(f, std::move(kids));
	}
	}
}

Formula simplify(const Formula &f)
{
	using K = Formula::Kind;
	switch (f.kind()) {
	case K::True:
	case K::False:
		return f;
	case K::Atom:
		if (auto *c = std::get_if<PolyCmp>(&f.atom()); c && c->lhs.is_constant())
			return Formula::constant(compare(c->lhs.constant(), c->op, c->rhs));
		return f;
	case K::Not: {
		Formula g = simplify(f.children()[0]);
		if (g.is_true())
			return Formula::bottom();
		if (g.is_false())
			return Formula::top();
		if (g.kind() == K::Not)
			return g.children()[0];
		return Formula::negation(g);
	}
	case K::And:
	case K::Or: {
		bool is_and = f.kind() == K::And;
		std::vector<Formula> kids;
		for (const Formula &c : f.children()) {
			Formula g = simplify(c);
			if (g.is_true() == is_and && (g.is_true() || g.is_false()))
				continue;
			if (g.is_false() == is_and && (g.is_true() || g.is_false()))
				return Formula::constant(!is_and);
			if (g.kind() == f.kind())
				for (const Formula &h : g.children())
					kids.push_back(h);
			else
				kids.push_back(g);
		}
		return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
	}
	case K::Implies: {
		Formula a = simplify(f.children()[0]), b = simplify(f.children()[1]);
		if (a.is_false() || b.is_true())
			return Formula::top();
		if (a.is_true())
			return b;
		if (b.is_false())
			return simplify(Formula::negation(a));
		return Formula::implies(a, b);
	}
	case K::Iff: {
		Formula a = simplify(f.children()[0]), b = simplify(f.children()[1]);
		if (a.is_true())
			return b;
		if (b.is_true())
			return a;
		if (a.is_false())
			return simplify(Formula::negation(b));
		if (b.is_false())
			return simplify(Formula::negation(a));
		return Formula::iff(a, b);
	}
	}
	return f;
}

namespace {

Formula nnf(const Formula &f, bool positive)
{
	using K = Formula::Kind;
	switch (f.kind()) {
	case K::True:
		return Formula::constant(positive);
	case K::False:
		return Formula::constant(!positive);
	case K::Atom:
		if (positive)
			return f;
		if (auto *c = std::get_if<PolyCmp>(&f.atom()))
			return Formula::cmp(c->lhs, negate(c->op), c->rhs);
		return Formula::negation(f);
	case K::Not:
		return nnf(f.children()[0], !positive);
	case K::And:
	case K::Or: {
		std::vector<Formula> kids;
		for (const Formula &g : f.children())
			kids.push_back(nnf(g, positive));
		bool as_and = (f.kind() == K::And) == positive;
		return as_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
	}
	case K::Implies: {
		const Formula &a = f.children()[0], &b = f.children()[1];
		if (positive)
			return Formula::disj({nnf(a, false), nnf(b, true)});
		return Formula::conj({nnf(a, true), nnf(b, false)});
	}
	case K::Iff: {
		const Formula &a = f.children()[0], &b = f.children()[1];
		/* a <-> b  ==  (a ∧ b) ∨ (¬a ∧ ¬b);  ¬(a <-> b)  ==  (a ∧ ¬b) ∨ (¬a ∧ b) */
		return Formula::disj({Formula::conj({nnf(a, true), nnf(b, positive)}),
		                      Formula::conj({nnf(a, false), nnf(b, !positive)})});
	}
	}
	return f;
}

} // namespace

Formula to_nnf(const Formula &f) { return nnf(f, true); }
Formula negate_to_nnf(const Formula &f) { return nnf(f, false); }

namespace {

void free_vars_into(const Formula &f, std::set<VarId> &out)
{
	if (f.kind() == Formula::Kind::Atom) {
		if (auto *c = std::get_if<PolyCmp>(&f.atom())) {
			auto vs = c->lhs.vars();
			out.insert(vs.begin(), vs.end());
		} else
			out.insert(std::get<BoolAtom>(f.atom()).var);
		return;
	}
	for (const Formula &g : f.children())
		free_vars_into(g, out);
}

} // namespace

std::set<VarId> free_vars(const Formula &f)
{
	std::set<VarId> r;
	free_vars_into(f, r);
	return r;
}

void collect_atoms(const Formula &f, std::vector<Atom> &out)
{
	if (f.kind() == Formula::Kind::Atom) {
		out.push_back(f.atom());
		return;
	}
	for (const Formula &g : f.children())
		collect_atoms(g, out);
}

std::vector<Formula> conjuncts(const Formula &f)
{
	std::vector<Formula> r;
	if (f.kind() == Formula::Kind::And) {
		for (const Formula &g : f.children()) {
			auto sub = conjuncts(g);
			r.insert(r.end(), sub.begin(), sub.end());
		}
	} else if (!f.is_true())
		r.push_back(f);
	return r;
}

unsigned max_degree(const Formula &f)
{
	std::vector<Atom> atoms;
	collect_atoms(f, atoms);
	unsigned d = 0;
	for (const Atom &a : atoms)
		if (auto *c = std::get_if<PolyCmp>(&a))
			d = std::max(d, c->lhs.degree());
	return d;
}

} // namespace efsmt
